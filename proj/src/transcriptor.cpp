#include "overlapfree/transcriptor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "overlapfree/random.hpp"

namespace overlapfree {

namespace {

const double kGoldenAngle = std::numbers::pi * (3.0 - std::sqrt(5.0));

}  // namespace

std::vector<DataPoint> spread_singularities(std::span<const DataPoint> points, double spacing) {
    std::vector<DataPoint> out(points.begin(), points.end());
    if (out.size() < 2) return out;

    std::vector<std::size_t> order(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& pa = points[a];
        const auto& pb = points[b];
        if (pa.x != pb.x) return pa.x < pb.x;
        if (pa.y != pb.y) return pa.y < pb.y;
        return pa.index < pb.index;
    });

    std::size_t begin = 0;
    while (begin < order.size()) {
        std::size_t end = begin + 1;
        const auto& anchor = points[order[begin]];
        while (end < order.size() && points[order[end]].x == anchor.x &&
               points[order[end]].y == anchor.y)
            ++end;
        if (end - begin > 1) {
            for (std::size_t m = 1; m <= end - begin; ++m) {
                const double radius = spacing * std::sqrt(static_cast<double>(m));
                const double theta = static_cast<double>(m) * kGoldenAngle;
                auto& p = out[order[begin + m - 1]];
                p.x = anchor.x + radius * std::cos(theta);
                p.y = anchor.y + radius * std::sin(theta);
            }
        }
        begin = end;
    }
    return out;
}

std::vector<Grid> gridding(std::span<const DataPoint> points, double size, GridFrame* frame) {
    if (!(size > 0.0) || !std::isfinite(size)) throw ParameterError("grid size must be positive");
    if (points.empty()) throw ParameterError("empty point set");

    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
    }
    if (frame) *frame = GridFrame{min_x, min_y, size};

    struct Keyed {
        std::int64_t i;
        std::int64_t j;
        std::size_t pos;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(points.size());
    for (std::size_t pos = 0; pos < points.size(); ++pos) {
        const auto& p = points[pos];
        keyed.push_back({static_cast<std::int64_t>(std::floor((p.y - min_y) / size)),
                         static_cast<std::int64_t>(std::floor((p.x - min_x) / size)), pos});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });

    std::vector<Grid> grids;
    for (const auto& kp : keyed) {
        if (grids.empty() || grids.back().i != kp.i || grids.back().j != kp.j)
            grids.push_back(Grid{kp.i, kp.j, {}});
        grids.back().sub_points.push_back(points[kp.pos]);
    }
    return grids;
}

TranscriptionResult transcribe(std::span<const DataPoint> points, const LayoutParams& params) {
    params.validate();
    if (points.empty()) throw ParameterError("empty point set");
    for (const auto& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ParameterError("non-finite point coordinate");

    std::vector<DataPoint> spread;
    std::span<const DataPoint> input = points;
    if (params.spread) {
        spread = spread_singularities(points, default_spread_spacing(params.size));
        input = spread;
    }

    TranscriptionResult result;
    const auto grids = gridding(input, params.size, &result.frame);
    result.grid_count = grids.size();

    std::int64_t num_max = 1;
    std::size_t total = 0;
    for (const auto& g : grids) {
        const auto num = static_cast<std::int64_t>(g.sub_points.size());
        num_max = std::max(num_max, num);
        total += static_cast<std::size_t>(std::max<std::int64_t>(params.k, num));
    }
    result.num_max = num_max;
    result.model = DensityModel{params.size, params.k, num_max};
    result.d_k = result.model.d_k();

    SplitMix64 rng(params.seed);
    auto& nodes = result.nodes;
    nodes.reserve(total);
    double r_min = std::numeric_limits<double>::infinity();
    for (const auto& g : grids) {
        const auto num = static_cast<std::int64_t>(g.sub_points.size());
        const auto slots = std::max<std::int64_t>(params.k, num);
        const double r_pack =
            std::sqrt(params.size * params.size / (std::numbers::pi * static_cast<double>(slots)));
        const double density = static_cast<double>(num) / static_cast<double>(num_max);
        r_min = std::min(r_min, r_pack);
        for (const auto& p : g.sub_points) {
            Node n;
            n.x = p.x;
            n.y = p.y;
            n.r_pack = r_pack;
            n.density = density;
            n.local_density = density;
            n.source_index = p.index;
            nodes.push_back(n);
        }
        const double cell_x = result.frame.origin_x + static_cast<double>(g.j) * params.size;
        const double cell_y = result.frame.origin_y + static_cast<double>(g.i) * params.size;
        for (auto filled = num; filled < params.k; ++filled) {
            Node n;
            n.x = cell_x + rng.uniform(0.0, params.size);
            n.y = cell_y + rng.uniform(0.0, params.size);
            n.r_pack = r_pack;
            n.density = density;
            n.local_density = density;
            nodes.push_back(n);
        }
    }
    for (auto& n : nodes) n.r_draw = r_min;
    return result;
}

}  // namespace overlapfree
