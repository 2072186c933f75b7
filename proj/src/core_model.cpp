#include "overlapfree/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace overlapfree {

void LayoutParams::validate() const {
    if (!(size > 0.0) || !std::isfinite(size)) throw ParameterError("size must be positive");
    if (k < 1) throw ParameterError("k must be at least 1");
    if (th < 0) throw ParameterError("th must be at least 1 (or 0 for auto)");
    if (!(epsilon > 0.0 && epsilon <= 1e-3)) throw ParameterError("epsilon must lie in (0, 1e-3]");
}

double DensityModel::d_k() const {
    return std::min(1.0, static_cast<double>(k) / static_cast<double>(num_max));
}

double DensityModel::r_pack_at(double density) const {
    const double count = std::max(static_cast<double>(k), density * static_cast<double>(num_max));
    return std::sqrt(size * size / (std::numbers::pi * count));
}

void Layout::update_bbox() { bbox = bounding_box(nodes); }

std::size_t Layout::data_node_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return !n.is_dummy(); }));
}

Vec2 center_of(std::span<const Node> nodes) {
    if (nodes.empty()) throw ParameterError("empty node set");
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& n : nodes) {
        sx += n.x;
        sy += n.y;
    }
    const auto count = static_cast<double>(nodes.size());
    return {sx / count, sy / count};
}

BoundingBox bounding_box(std::span<const Node> nodes) {
    if (nodes.empty()) return {};
    BoundingBox box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
    for (const auto& n : nodes) {
        box.min_x = std::min(box.min_x, n.x - n.r_pack);
        box.min_y = std::min(box.min_y, n.y - n.r_pack);
        box.max_x = std::max(box.max_x, n.x + n.r_pack);
        box.max_y = std::max(box.max_y, n.y + n.r_pack);
    }
    return box;
}

namespace {

double radius_of(const Node& n, RadiusField field) {
    return field == RadiusField::pack ? n.r_pack : n.r_draw;
}

bool overlaps(const Node& a, const Node& b, RadiusField field, double epsilon) {
    const double rsum = radius_of(a, field) + radius_of(b, field);
    const double limit = rsum - epsilon * rsum;
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy < limit * limit && limit > 0.0;
}

}  // namespace

std::vector<Violation> check_mutual_exclusion_brute(std::span<const Node> nodes, RadiusField field,
                                                    double epsilon) {
    std::vector<Violation> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (overlaps(nodes[i], nodes[j], field, epsilon)) out.emplace_back(i, j);
    return out;
}

std::vector<Violation> check_mutual_exclusion(std::span<const Node> nodes, RadiusField field,
                                              double epsilon) {
    std::vector<Violation> out;
    if (nodes.size() < 2) return out;

    // Each circle is registered in every cell its bounding square touches; a
    // pair is reported only from the cell holding the lower-left corner of the
    // intersection of the two squares.
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    double radius_sum = 0.0;
    for (const auto& n : nodes) {
        const double r = radius_of(n, field);
        min_x = std::min(min_x, n.x - r);
        min_y = std::min(min_y, n.y - r);
        max_x = std::max(max_x, n.x + r);
        max_y = std::max(max_y, n.y + r);
        radius_sum += r;
    }
    const auto count = static_cast<double>(nodes.size());
    double cell = std::max(2.0 * radius_sum / count, 1e-300);
    const double extent_x = std::max(max_x - min_x, cell);
    const double extent_y = std::max(max_y - min_y, cell);
    const double max_cells = 4.0 * count + 16.0;
    if ((extent_x / cell) * (extent_y / cell) > max_cells)
        cell = std::sqrt(extent_x * extent_y / max_cells);
    const auto cols = static_cast<std::int64_t>(extent_x / cell) + 1;
    const auto rows = static_cast<std::int64_t>(extent_y / cell) + 1;

    auto cell_x = [&](double x) {
        return std::clamp<std::int64_t>(static_cast<std::int64_t>((x - min_x) / cell), 0, cols - 1);
    };
    auto cell_y = [&](double y) {
        return std::clamp<std::int64_t>(static_cast<std::int64_t>((y - min_y) / cell), 0, rows - 1);
    };

    std::vector<std::vector<std::uint32_t>> cells(static_cast<std::size_t>(cols * rows));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = radius_of(nodes[i], field);
        const auto x0 = cell_x(nodes[i].x - r);
        const auto x1 = cell_x(nodes[i].x + r);
        const auto y0 = cell_y(nodes[i].y - r);
        const auto y1 = cell_y(nodes[i].y + r);
        for (auto cy = y0; cy <= y1; ++cy)
            for (auto cx = x0; cx <= x1; ++cx)
                cells[static_cast<std::size_t>(cy * cols + cx)].push_back(
                    static_cast<std::uint32_t>(i));
    }

    for (std::int64_t cy = 0; cy < rows; ++cy) {
        for (std::int64_t cx = 0; cx < cols; ++cx) {
            const auto& members = cells[static_cast<std::size_t>(cy * cols + cx)];
            for (std::size_t a = 0; a < members.size(); ++a) {
                const Node& na = nodes[members[a]];
                const double ra = radius_of(na, field);
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    const Node& nb = nodes[members[b]];
                    const double rb = radius_of(nb, field);
                    const double lx = std::max(na.x - ra, nb.x - rb);
                    const double ly = std::max(na.y - ra, nb.y - rb);
                    if (cell_x(lx) != cx || cell_y(ly) != cy) continue;
                    if (overlaps(na, nb, field, epsilon)) {
                        auto i = static_cast<std::size_t>(members[a]);
                        auto j = static_cast<std::size_t>(members[b]);
                        out.emplace_back(std::min(i, j), std::max(i, j));
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Violation> check_mutual_exclusion(const Layout& layout, RadiusField field) {
    return check_mutual_exclusion(layout.nodes, field, layout.params.epsilon);
}

}  // namespace overlapfree
