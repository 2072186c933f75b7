#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "overlapfree/core_model.hpp"

namespace overlapfree {

/// One non-empty square cell of the data-space grid. Row `i` counts along y,
/// column `j` along x, both from the minimum corner of the point set.
struct Grid {
    std::int64_t i = 0;
    std::int64_t j = 0;
    std::vector<DataPoint> sub_points;
};

struct GridFrame {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double size = 1.0;
};

struct TranscriptionResult {
    std::vector<Node> nodes;
    std::int64_t num_max = 1;
    double d_k = 1.0;
    DensityModel model;
    GridFrame frame;
    std::size_t grid_count = 0;
};

/// Replaces every group of coincident points by a Vogel spiral around the
/// shared coordinate: the m-th member (1-based, in index order) moves to
/// radius spacing * sqrt(m) at angle m * golden_angle. Singletons are kept.
std::vector<DataPoint> spread_singularities(std::span<const DataPoint> points, double spacing);

/// Bins points into squares of edge `size` anchored at (min_x, min_y). Only
/// non-empty grids are returned, in row-major order.
std::vector<Grid> gridding(std::span<const DataPoint> points, double size,
                           GridFrame* frame = nullptr);

/// Turns a point set into packing circles: per grid, one data node per point
/// and enough dummy nodes to reach k, all sharing r_pack = size / sqrt(pi * max(k, num)).
TranscriptionResult transcribe(std::span<const DataPoint> points, const LayoutParams& params);

/// Default singularity spacing used by transcribe when spreading is on.
inline double default_spread_spacing(double size) { return size / 20.0; }

}  // namespace overlapfree
