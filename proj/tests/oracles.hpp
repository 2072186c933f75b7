#pragma once

// Straight-line reference implementations. Deliberately quadratic and free of
// any spatial index so they can check the fast library code.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "overlapfree/core_model.hpp"
#include "overlapfree/metrics.hpp"

namespace oracle {

using overlapfree::Vec2;

inline std::vector<std::size_t> knn(const std::vector<Vec2>& pts, std::size_t i, std::size_t K) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != i) idx.push_back(j);
    auto d2 = [&](std::size_t j) {
        const double dx = pts[j].x - pts[i].x, dy = pts[j].y - pts[i].y;
        return dx * dx + dy * dy;
    };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double da = d2(a), db = d2(b);
        return da != db ? da < db : a < b;
    });
    idx.resize(K);
    return idx;
}

inline double displacement(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    auto norm = [](const std::vector<Vec2>& p) {
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (auto q : p) {
            x0 = std::min(x0, q.x);
            x1 = std::max(x1, q.x);
            y0 = std::min(y0, q.y);
            y1 = std::max(y1, q.y);
        }
        std::vector<Vec2> out;
        for (auto q : p) out.push_back({(q.x - 0.5 * (x0 + x1)) / (x1 - x0), (q.y - 0.5 * (y0 + y1)) / (x1 - x0)});
        return out;
    };
    const auto na = norm(a), nb = norm(b);
    double s = 0.0;
    for (std::size_t i = 0; i < na.size(); ++i) s += std::hypot(na[i].x - nb[i].x, na[i].y - nb[i].y);
    return s / static_cast<double>(na.size());
}

inline double knn_preservation(const std::vector<Vec2>& a, const std::vector<Vec2>& b, std::size_t K) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto na = knn(a, i, K), nb = knn(b, i, K);
        std::size_t common = 0;
        for (auto x : na)
            if (std::find(nb.begin(), nb.end(), x) != nb.end()) ++common;
        s += static_cast<double>(common) / static_cast<double>(K);
    }
    return s / static_cast<double>(a.size());
}

inline double shape_preservation(const std::vector<Vec2>& a, const std::vector<Vec2>& b, int n_circles) {
    const std::size_t n = a.size();
    Vec2 c{}, c2{};
    for (auto p : a) c = c + p;
    for (auto p : b) c2 = c2 + p;
    c = (1.0 / static_cast<double>(n)) * c;
    c2 = (1.0 / static_cast<double>(n)) * c2;
    double w = 0.0;
    {
        double x0 = 1e300, x1 = -1e300;
        for (auto p : b) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
        }
        w = x1 - x0;
    }
    double max_d = 0.0;
    for (auto p : a) max_d = std::max(max_d, std::hypot(p.x - c.x, p.y - c.y));
    const double h = max_d / n_circles;
    double total = 0.0;
    int groups = 0;
    for (int j = 1; j <= n_circles; ++j) {
        std::vector<double> ls;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = std::hypot(a[i].x - c.x, a[i].y - c.y);
            // Nearest circle, ties rounding outward; the innermost half band is skipped.
            int g = static_cast<int>(std::floor(d / h + 0.5));
            if (g > n_circles) g = n_circles;
            if (g == j) ls.push_back(std::hypot(b[i].x - c2.x, b[i].y - c2.y) / w);
        }
        if (ls.empty()) continue;
        const double m = std::accumulate(ls.begin(), ls.end(), 0.0) / static_cast<double>(ls.size());
        double v = 0.0;
        for (double l : ls) v += (l - m) * (l - m);
        total += v / static_cast<double>(ls.size());
        ++groups;
    }
    return groups ? total / groups : 0.0;
}

inline std::vector<std::size_t> density_ranks(const std::vector<Vec2>& p, std::size_t K) {
    std::vector<double> md(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        double s = 0.0;
        for (auto j : knn(p, i, K)) s += std::hypot(p[j].x - p[i].x, p[j].y - p[i].y);
        md[i] = s / static_cast<double>(K);
    }
    std::vector<std::size_t> rank(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::size_t r = 0;
        for (std::size_t j = 0; j < p.size(); ++j)
            if (md[j] < md[i] || (md[j] == md[i] && j < i)) ++r;
        rank[i] = r;
    }
    return rank;
}

inline double density_preservation(const std::vector<Vec2>& a, const std::vector<Vec2>& b, std::size_t K) {
    const auto ra = density_ranks(a, K), rb = density_ranks(b, K);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::fabs(static_cast<double>(ra[i]) - static_cast<double>(rb[i])) / static_cast<double>(a.size() - 1);
    return s / static_cast<double>(a.size());
}

// Pairwise concordance count with index tie-break on both sides.
inline double overall_similarity(const std::vector<Vec2>& a, const std::vector<Vec2>& b, int n_dir) {
    const double pi = std::acos(-1.0);
    const std::size_t n = a.size();
    double total = 0.0;
    for (int j = 0; j < n_dir; ++j) {
        const double t = j * pi / n_dir;
        const double ux = std::cos(t), uy = std::sin(t);
        long long conc = 0, disc = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double ap = a[p].x * ux + a[p].y * uy, aq = a[q].x * ux + a[q].y * uy;
                const double bp = b[p].x * ux + b[p].y * uy, bq = b[q].x * ux + b[q].y * uy;
                const bool sa = ap != aq ? ap < aq : true;  // p < q by index
                const bool sb = bp != bq ? bp < bq : true;
                (sa == sb ? conc : disc) += 1;
            }
        total += static_cast<double>(conc - disc) / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
    }
    return total / n_dir;
}

inline double kendall_pairs(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    long long conc = 0, disc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const bool a = x[i] < x[j], b = y[i] < y[j];
            (a == b ? conc : disc) += 1;
        }
    return static_cast<double>(conc - disc) / (0.5 * static_cast<double>(x.size()) * static_cast<double>(x.size() - 1));
}

}  // namespace oracle
