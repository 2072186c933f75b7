#include "overlapfree/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "overlapfree/random.hpp"

namespace overlapfree {

namespace {

// Box-Muller; std::normal_distribution is not reproducible across libraries.
class Normal {
public:
    explicit Normal(SplitMix64& rng) : rng_(rng) {}
    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - rng_.uniform();
        const double u2 = rng_.uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return mag * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    SplitMix64& rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::size_t pick_weighted(SplitMix64& rng, const std::vector<double>& cumulative) {
    const double u = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

std::vector<double> random_weights(SplitMix64& rng, std::size_t count) {
    std::vector<double> w(count);
    double acc = 0.0;
    for (auto& v : w) {
        acc += rng.uniform(0.5, 1.5);
        v = acc;
    }
    return w;
}

void number(std::vector<DataPoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].index = static_cast<std::int64_t>(i);
}

}  // namespace

std::vector<DataPoint> gaussian_mixture(std::size_t n, int clusters, std::uint64_t seed, double extent) {
    if (clusters < 1) throw ParameterError("clusters must be at least 1");
    SplitMix64 rng(seed);
    Normal normal(rng);
    struct Blob {
        double cx, cy, sx, sy;
    };
    std::vector<Blob> blobs(static_cast<std::size_t>(clusters));
    for (auto& b : blobs) {
        b.cx = rng.uniform(0.15, 0.85) * extent;
        b.cy = rng.uniform(0.15, 0.85) * extent;
        b.sx = rng.uniform(0.02, 0.08) * extent;
        b.sy = rng.uniform(0.02, 0.08) * extent;
    }
    const auto cumulative = random_weights(rng, blobs.size());
    std::vector<DataPoint> pts(n);
    for (auto& p : pts) {
        const Blob& b = blobs[pick_weighted(rng, cumulative)];
        p.x = b.cx + b.sx * normal();
        p.y = b.cy + b.sy * normal();
    }
    number(pts);
    return pts;
}

std::vector<DataPoint> rings(std::size_t n, std::uint64_t seed, double extent) {
    SplitMix64 rng(seed);
    Normal normal(rng);
    const auto count = static_cast<std::size_t>(2 + rng.below(3));
    struct Ring {
        double cx, cy, r, noise;
    };
    std::vector<Ring> rs(count);
    for (auto& r : rs) {
        r.cx = rng.uniform(0.3, 0.7) * extent;
        r.cy = rng.uniform(0.3, 0.7) * extent;
        r.r = rng.uniform(0.08, 0.3) * extent;
        r.noise = rng.uniform(0.005, 0.02) * extent;
    }
    const auto cumulative = random_weights(rng, rs.size());
    std::vector<DataPoint> pts(n);
    for (auto& p : pts) {
        const Ring& r = rs[pick_weighted(rng, cumulative)];
        const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double rad = r.r + r.noise * normal();
        p.x = r.cx + rad * std::cos(t);
        p.y = r.cy + rad * std::sin(t);
    }
    number(pts);
    return pts;
}

std::vector<DataPoint> lines(std::size_t n, std::uint64_t seed, double extent) {
    SplitMix64 rng(seed);
    Normal normal(rng);
    const auto count = static_cast<std::size_t>(2 + rng.below(3));
    struct Segment {
        double x0, y0, x1, y1, noise;
    };
    std::vector<Segment> segs(count);
    for (auto& s : segs) {
        s.x0 = rng.uniform(0.05, 0.95) * extent;
        s.y0 = rng.uniform(0.05, 0.95) * extent;
        s.x1 = rng.uniform(0.05, 0.95) * extent;
        s.y1 = rng.uniform(0.05, 0.95) * extent;
        s.noise = rng.uniform(0.003, 0.015) * extent;
    }
    const auto cumulative = random_weights(rng, segs.size());
    std::vector<DataPoint> pts(n);
    for (auto& p : pts) {
        const Segment& s = segs[pick_weighted(rng, cumulative)];
        const double t = rng.uniform();
        p.x = s.x0 + t * (s.x1 - s.x0) + s.noise * normal();
        p.y = s.y0 + t * (s.y1 - s.y0) + s.noise * normal();
    }
    number(pts);
    return pts;
}

std::vector<DataPoint> mixed_dataset(std::size_t n, std::uint64_t seed, double extent) {
    SplitMix64 rng(seed);
    const std::size_t n_blob = n / 2;
    const std::size_t n_ring = n / 4;
    const std::size_t n_line = n - n_blob - n_ring;
    auto pts = gaussian_mixture(n_blob, 2 + static_cast<int>(rng.below(5)), rng.next(), extent);
    const auto r = rings(n_ring, rng.next(), extent);
    const auto l = lines(n_line, rng.next(), extent);
    pts.insert(pts.end(), r.begin(), r.end());
    pts.insert(pts.end(), l.begin(), l.end());
    number(pts);
    return pts;
}

std::vector<Node> unit_disk_nodes(std::size_t n, std::uint64_t seed, double r_min, double r_max) {
    SplitMix64 rng(seed);
    std::vector<Node> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rad = std::sqrt(rng.uniform());
        const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
        Node& v = nodes[i];
        v.x = rad * std::cos(t);
        v.y = rad * std::sin(t);
        v.r_pack = rng.uniform(r_min, r_max);
        v.r_draw = v.r_pack;
        v.density = 1.0;
        v.source_index = static_cast<std::int64_t>(i);
    }
    return nodes;
}

std::vector<DataPoint> subsample(std::span<const DataPoint> points, double rate, std::uint64_t seed) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw ParameterError("sampling rate must lie in [0, 1]");
    const auto keep = static_cast<std::size_t>(std::llround(rate * static_cast<double>(points.size())));
    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < keep; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(points.size() - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(keep);
    std::sort(idx.begin(), idx.end());
    std::vector<DataPoint> out;
    out.reserve(keep);
    for (std::size_t i : idx) out.push_back(points[i]);
    number(out);
    return out;
}

}  // namespace overlapfree
