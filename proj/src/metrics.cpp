#include "overlapfree/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/kd_tree.hpp"

namespace overlapfree {

namespace {

struct Frame {
    double cx;
    double cy;
    double width;
};

Frame bbox_frame(std::span<const Vec2> pts) {
    double lo_x = pts[0].x, hi_x = pts[0].x, lo_y = pts[0].y, hi_y = pts[0].y;
    for (const Vec2& p : pts) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    }
    const double w = hi_x - lo_x;
    if (!(w > 0.0)) throw ParameterError("degenerate scatterplot");
    return {0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y), w};
}

void require_nonempty(const ScatterPair& pair) {
    pair.validate();
    if (pair.size() == 0) throw ParameterError("empty scatterplot");
}

// Mean distance to the K nearest neighbours of every point.
std::vector<double> mean_knn_distance(std::span<const Vec2> pts, int K) {
    const detail::KdTree tree(pts);
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto d2 = tree.knn_sq_distances(i, static_cast<std::size_t>(K));
        double s = 0.0;
        for (double v : d2) s += std::sqrt(v);
        out[i] = s / static_cast<double>(K);
    }
    return out;
}

// Position of each index in the order sorted by (key, index).
std::vector<std::size_t> rank_of(const std::vector<double>& key) {
    std::vector<std::size_t> order(key.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return key[a] != key[b] ? key[a] < key[b] : a < b;
    });
    std::vector<std::size_t> rank(key.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    return rank;
}

std::uint64_t count_inversions(std::vector<std::size_t>& a, std::vector<std::size_t>& buf,
                               std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(a, buf, lo, mid) + count_inversions(a, buf, mid, hi);
    std::size_t i = lo, j = mid, o = lo;
    while (i < mid && j < hi) {
        if (a[j] < a[i]) {
            inv += mid - i;
            buf[o++] = a[j++];
        } else {
            buf[o++] = a[i++];
        }
    }
    while (i < mid) buf[o++] = a[i++];
    while (j < hi) buf[o++] = a[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
              a.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

void ScatterPair::validate() const {
    if (original.size() != relaid.size()) throw ParameterError("scatterplots differ in length");
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (!std::isfinite(original[i].x) || !std::isfinite(original[i].y) || !std::isfinite(relaid[i].x) ||
            !std::isfinite(relaid[i].y))
            throw ParameterError("non-finite coordinate in scatterplot");
    }
}

double displacement(const ScatterPair& pair) {
    require_nonempty(pair);
    const Frame a = bbox_frame(pair.original);
    const Frame b = bbox_frame(pair.relaid);
    double sum = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        const double dx = (pair.original[i].x - a.cx) / a.width - (pair.relaid[i].x - b.cx) / b.width;
        const double dy = (pair.original[i].y - a.cy) / a.width - (pair.relaid[i].y - b.cy) / b.width;
        sum += std::hypot(dx, dy);
    }
    return sum / static_cast<double>(pair.size());
}

double knn_preservation(const ScatterPair& pair, int K) {
    pair.validate();
    if (K < 1) throw ParameterError("K must be at least 1");
    if (pair.size() <= static_cast<std::size_t>(K)) throw ParameterError("knn preservation needs N > K");
    const detail::KdTree ta(pair.original);
    const detail::KdTree tb(pair.relaid);
    const auto k = static_cast<std::size_t>(K);
    double sum = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i) {
        auto na = ta.knn(i, k);
        auto nb = tb.knn(i, k);
        std::sort(na.begin(), na.end());
        std::sort(nb.begin(), nb.end());
        std::vector<std::uint32_t> common;
        std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
        sum += static_cast<double>(common.size()) / static_cast<double>(K);
    }
    return sum / static_cast<double>(pair.size());
}

double shape_preservation(const ScatterPair& pair, int n_circles) {
    require_nonempty(pair);
    if (n_circles < 1) throw ParameterError("n_circles must be at least 1");
    if (pair.size() < static_cast<std::size_t>(n_circles))
        throw ParameterError("shape preservation needs N >= n_circles");
    const std::size_t n = pair.size();

    Vec2 c{};
    for (const Vec2& p : pair.original) c = c + p;
    c = (1.0 / static_cast<double>(n)) * c;
    std::vector<double> dist(n);
    double max_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dist[i] = std::hypot(pair.original[i].x - c.x, pair.original[i].y - c.y);
        max_d = std::max(max_d, dist[i]);
    }
    if (!(max_d > 0.0)) throw ParameterError("degenerate scatterplot");

    const Frame b = bbox_frame(pair.relaid);
    Vec2 c2{};
    for (const Vec2& p : pair.relaid) c2 = c2 + p;
    c2 = (1.0 / static_cast<double>(n)) * c2;

    const double h = max_d / n_circles;
    std::vector<double> sum(static_cast<std::size_t>(n_circles) + 1, 0.0);
    std::vector<double> sum_sq(sum.size(), 0.0);
    std::vector<std::size_t> count(sum.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(std::floor(dist[i] / h + 0.5));
        if (j == 0) continue;
        const std::size_t g = std::min(j, static_cast<std::size_t>(n_circles));
        const double l = std::hypot(pair.relaid[i].x - c2.x, pair.relaid[i].y - c2.y) / b.width;
        sum[g] += l;
        count[g] += 1;
    }
    std::vector<double> mean(sum.size(), 0.0);
    for (std::size_t g = 1; g < sum.size(); ++g)
        if (count[g] > 0) mean[g] = sum[g] / static_cast<double>(count[g]);
    // Two-pass variance against the group mean.
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(std::floor(dist[i] / h + 0.5));
        if (j == 0) continue;
        const std::size_t g = std::min(j, static_cast<std::size_t>(n_circles));
        const double l = std::hypot(pair.relaid[i].x - c2.x, pair.relaid[i].y - c2.y) / b.width;
        sum_sq[g] += (l - mean[g]) * (l - mean[g]);
    }
    double total = 0.0;
    std::size_t groups = 0;
    for (std::size_t g = 1; g < sum.size(); ++g) {
        if (count[g] == 0) continue;
        total += sum_sq[g] / static_cast<double>(count[g]);
        ++groups;
    }
    return groups > 0 ? total / static_cast<double>(groups) : 0.0;
}

double density_preservation(const ScatterPair& pair, int K) {
    pair.validate();
    if (K < 1) throw ParameterError("K must be at least 1");
    if (pair.size() <= static_cast<std::size_t>(K)) throw ParameterError("density preservation needs N > K");
    const auto ra = rank_of(mean_knn_distance(pair.original, K));
    const auto rb = rank_of(mean_knn_distance(pair.relaid, K));
    const double denom = static_cast<double>(pair.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < pair.size(); ++i)
        sum += std::fabs(static_cast<double>(ra[i]) - static_cast<double>(rb[i])) / denom;
    return sum / static_cast<double>(pair.size());
}

double kendall_tau_a(std::span<const std::size_t> permutation) {
    const std::size_t n = permutation.size();
    if (n < 2) throw ParameterError("Kendall tau needs at least 2 items");
    std::vector<std::size_t> a(permutation.begin(), permutation.end());
    std::vector<std::size_t> buf(n);
    const std::uint64_t inv = count_inversions(a, buf, 0, n);
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return 1.0 - 2.0 * static_cast<double>(inv) / pairs;
}

double overall_similarity(const ScatterPair& pair, int n_directions) {
    pair.validate();
    if (n_directions < 1) throw ParameterError("n_directions must be at least 1");
    if (pair.size() < 2) throw ParameterError("overall similarity needs N >= 2");
    const std::size_t n = pair.size();
    const double pi = std::acos(-1.0);
    std::vector<double> pa(n), pb(n);
    std::vector<std::size_t> perm(n);
    double total = 0.0;
    for (int j = 0; j < n_directions; ++j) {
        const double t = j * pi / n_directions;
        const double ux = std::cos(t), uy = std::sin(t);
        for (std::size_t i = 0; i < n; ++i) {
            pa[i] = pair.original[i].x * ux + pair.original[i].y * uy;
            pb[i] = pair.relaid[i].x * ux + pair.relaid[i].y * uy;
        }
        const auto ra = rank_of(pa);
        const auto rb = rank_of(pb);
        // Walk the original order and read off positions in the relaid order.
        for (std::size_t i = 0; i < n; ++i) perm[ra[i]] = rb[i];
        total += kendall_tau_a(perm);
    }
    return total / n_directions;
}

MetricReport evaluate_metrics(const ScatterPair& pair, const MetricParams& params) {
    MetricReport r;
    r.params = params;
    r.displacement = displacement(pair);
    r.knn = knn_preservation(pair, params.K);
    r.shape = shape_preservation(pair, params.n_circles);
    r.density = density_preservation(pair, params.K);
    r.overall = overall_similarity(pair, params.n_directions);
    return r;
}

}  // namespace overlapfree
