#pragma once

#include <span>
#include <vector>

#include "overlapfree/core_model.hpp"

namespace overlapfree {

/// An original scatterplot and its re-laid-out counterpart, index-aligned.
struct ScatterPair {
    std::vector<Vec2> original;
    std::vector<Vec2> relaid;

    /// Throws ParameterError on unequal lengths or non-finite coordinates.
    void validate() const;
    std::size_t size() const { return original.size(); }
};

struct MetricParams {
    int K = 10;
    int n_circles = 20;
    int n_directions = 30;
};

struct MetricReport {
    double displacement = 0.0;
    double knn = 0.0;
    double shape = 0.0;
    double density = 0.0;
    double overall = 0.0;
    MetricParams params;
};

/// Mean point distance after scaling each side to unit bbox width and
/// aligning bbox centers.
double displacement(const ScatterPair& pair);

/// Mean fraction of shared K nearest neighbours. Ties go to the smaller index.
double knn_preservation(const ScatterPair& pair, int K);

/// Concentric circles of radii j * h (h = max distance / n_circles) around the
/// centroid of the original; a point joins circle round(d / h) and points
/// closer than h / 2 join none. Returns the mean, over non-empty circles, of
/// the population variance of the relaid points' width-normalized distances
/// to the relaid centroid.
double shape_preservation(const ScatterPair& pair, int n_circles);

/// Mean absolute difference of density quantiles rank / (N - 1), where points
/// are ranked by mean distance to their K nearest neighbours.
double density_preservation(const ScatterPair& pair, int K);

/// Mean Kendall tau-a between the projection orders of both sides over the
/// directions j * pi / n_directions.
double overall_similarity(const ScatterPair& pair, int n_directions);

MetricReport evaluate_metrics(const ScatterPair& pair, const MetricParams& params = {});

/// Kendall tau-a of a permutation against the identity, by merge-sort
/// inversion counting.
double kendall_tau_a(std::span<const std::size_t> permutation);

}  // namespace overlapfree
