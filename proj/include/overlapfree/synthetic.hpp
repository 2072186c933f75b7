#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "overlapfree/core_model.hpp"

namespace overlapfree {

/// Seeded dataset generators used by the benchmarks and tests. All output is
/// bit-reproducible for a given seed. Points span roughly [0, extent]^2.

std::vector<DataPoint> gaussian_mixture(std::size_t n, int clusters, std::uint64_t seed, double extent = 800.0);
std::vector<DataPoint> rings(std::size_t n, std::uint64_t seed, double extent = 800.0);
std::vector<DataPoint> lines(std::size_t n, std::uint64_t seed, double extent = 800.0);

/// A mixture of Gaussian blobs, rings and line segments in one point set.
std::vector<DataPoint> mixed_dataset(std::size_t n, std::uint64_t seed, double extent = 800.0);

/// Packing nodes at uniform positions in the unit disk with radii uniform in
/// [r_min, r_max]. Every node carries its ordinal as source index.
std::vector<Node> unit_disk_nodes(std::size_t n, std::uint64_t seed, double r_min = 1.0, double r_max = 10.0);

/// Keeps round(rate * N) points chosen without replacement, in input order,
/// and renumbers them from 0.
std::vector<DataPoint> subsample(std::span<const DataPoint> points, double rate, std::uint64_t seed);

}  // namespace overlapfree
