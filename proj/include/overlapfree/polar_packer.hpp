#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "overlapfree/core_model.hpp"

namespace overlapfree {

struct Circle {
    Vec2 center;
    double r = 0.0;
};

enum class Side { left, right };

/// Center of a circle of radius `new_r` externally tangent to both `c1` and
/// `c2`, on the given side of the directed line c1 -> c2. Returns nullopt when
/// the two circles coincide or no such circle exists.
std::optional<Vec2> tangent_position(double new_r, const Circle& c1, const Circle& c2, Side side);

/// Overload picking the side that faces away from `inner`.
std::optional<Vec2> tangent_position(double new_r, const Circle& c1, const Circle& c2, Vec2 inner);

/// Writes each node's distance and angle in [0, 2*pi) about `center`.
/// A node exactly at the center gets angle 0.
std::vector<Node> polarize(std::span<const Node> nodes, Vec2 center);

/// Subchain half-length used when th is not given: ceil(0.5 * sqrt(n)) in [4, 512].
int auto_half_length(std::size_t node_count);

struct PackOptions {
    int th = 0;  // 0 = auto_half_length(n)
};

struct PackStats {
    std::size_t widenings = 0;
    std::size_t fallbacks = 0;
    std::size_t pruned = 0;
    std::size_t final_chain_length = 0;
};

/// Packs every node (dummies included) with the polar front-chain rule and
/// returns them in input order, translated so the packing origin sits on the
/// centroid of the input. dis and angle hold the polar coordinates of the
/// input positions.
std::vector<Node> pack_nodes(std::span<const Node> nodes, const PackOptions& options,
                             PackStats* stats = nullptr);

/// pack_nodes followed by dummy removal.
Layout pack(std::span<const Node> nodes, const PackOptions& options, PackStats* stats = nullptr);

}  // namespace overlapfree
