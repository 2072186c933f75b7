#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "overlapfree/io.hpp"
#include "overlapfree/metrics.hpp"
#include "overlapfree/polar_packer.hpp"
#include "overlapfree/radius_config.hpp"
#include "overlapfree/random.hpp"

namespace overlapfree {

/// Transcribes, packs and annotates a point set. The returned layout holds one
/// node per input point, ordered by source index, with local densities and
/// the default r_draw filled in and the canvas transform fitted.
LayoutDocument build_layout(std::span<const DataPoint> points, const LayoutParams& params,
                            double canvas_width = 800.0, double canvas_height = 800.0,
                            PackStats* stats = nullptr);

/// Original positions against packed positions, aligned by source index.
ScatterPair scatter_pair(std::span<const DataPoint> points, const Layout& layout);

struct RunConfig {
    std::string input;
    std::string out_dir = ".";
    LayoutParams params;
    double canvas_width = 800.0;
    double canvas_height = 800.0;
    std::optional<std::string> curve_path;
    bool metrics = false;
    MetricParams metric_params;
};

struct RunOutcome {
    LayoutDocument doc;
    std::optional<MetricReport> metrics;
    PackStats stats;
};

/// Reads the CSV, builds the layout, applies the optional curve and writes
/// layout.json, plot.svg and (when enabled) metrics.json into out_dir.
RunOutcome run_pipeline(const RunConfig& config);

/// A uniformly drawn curve that passes construction validation. In the
/// left mode the LD abscissa is drawn from [sparse_min, sparse_max] (or
/// [0, 1] when the range is empty).
RadiusCurve sample_curve(const DensityModel& model, SplitMix64& rng, double sparse_min = 0.0,
                         double sparse_max = 0.0);

/// JSON suite of (curve, density, local density, expected r_draw, zone)
/// vectors for cross-checking other evaluators of the radius curve.
std::string curve_test_vectors(std::size_t count, std::uint64_t seed);

struct BenchRow {
    std::string table;
    double param = 0.0;
    std::size_t n_prime = 0;
    double time_ms = 0.0;
};

/// N' after transcription, the quantity swept by the parameter benchmarks.
std::size_t transcribed_count(std::span<const DataPoint> points, const LayoutParams& params);

/// Runs the benchmark tables named in `spec`: a comma list of time, k, size,
/// rate or all. "time:10000:20000" overrides the timed node counts. Progress
/// lines go to `log` when given.
std::vector<BenchRow> run_bench(const std::string& spec, std::uint64_t seed, std::ostream* log = nullptr);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace overlapfree
