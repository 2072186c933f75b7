#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace overlapfree {

/// Raised for invalid parameters and malformed inputs.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

/// A raw input coordinate; `index` is the ordinal of the row it came from.
struct DataPoint {
    double x = 0.0;
    double y = 0.0;
    std::int64_t index = 0;
};

/// A packing circle. Data nodes carry the index of the point they stand for;
/// dummy nodes have no source and are never rendered.
struct Node {
    double x = 0.0;
    double y = 0.0;
    double r_pack = 0.0;
    double r_draw = 0.0;
    double density = 0.0;
    std::optional<std::int64_t> source_index;
    double dis = 0.0;
    double angle = 0.0;
    // Reciprocal mean KNN distance for nodes left of d_k; grid density otherwise.
    double local_density = 0.0;

    bool is_dummy() const { return !source_index.has_value(); }
    Vec2 center() const { return {x, y}; }
};

struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
};

struct LayoutParams {
    double size = 5.0;
    int k = 3;
    int th = 0;  // 0 selects the automatic subchain half-length
    std::uint64_t seed = 0;
    double epsilon = 1e-6;
    bool spread = true;

    /// Throws ParameterError when any field is out of range.
    void validate() const;
};

/// Density bookkeeping shared by the transcriptor and the radius model.
struct DensityModel {
    double size = 5.0;
    int k = 3;
    std::int64_t num_max = 1;

    /// Density of a grid holding exactly k points, clamped to 1.
    double d_k() const;
    /// Packing radius of a grid with the given density.
    double r_pack_at(double density) const;
    /// Global minimum packing radius (density 1).
    double r_pack1() const { return r_pack_at(1.0); }
};

struct Layout {
    std::vector<Node> nodes;
    BoundingBox bbox;
    LayoutParams params;
    DensityModel model;

    /// Recomputes bbox from node centers and r_pack.
    void update_bbox();
    std::size_t data_node_count() const;
};

enum class RadiusField { pack, draw };

using Violation = std::pair<std::size_t, std::size_t>;

/// Arithmetic mean of node centers. Throws on empty input.
Vec2 center_of(std::span<const Node> nodes);

/// Overlapping pairs (i < j): dist < (ri + rj) * (1 - epsilon).
/// Uses a uniform grid; results are sorted.
std::vector<Violation> check_mutual_exclusion(std::span<const Node> nodes, RadiusField field,
                                              double epsilon = 1e-6);
std::vector<Violation> check_mutual_exclusion(const Layout& layout, RadiusField field);

/// Same contract evaluated over all pairs.
std::vector<Violation> check_mutual_exclusion_brute(std::span<const Node> nodes, RadiusField field,
                                                    double epsilon = 1e-6);

BoundingBox bounding_box(std::span<const Node> nodes);

}  // namespace overlapfree
