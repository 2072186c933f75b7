// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. `--quick` shrinks the workloads for
// debugging; ctest runs the full suite.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "overlapfree/pipeline.hpp"
#include "overlapfree/synthetic.hpp"
#include "overlapfree/transcriptor.hpp"

using namespace overlapfree;

namespace {

bool quick = false;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<DataPoint> dataset(int kind, std::size_t n, std::uint64_t seed) {
    switch (kind % 4) {
        case 0: return gaussian_mixture(n, 3 + static_cast<int>(seed % 6), seed);
        case 1: return rings(n, seed);
        case 2: return lines(n, seed);
        default: return mixed_dataset(n, seed);
    }
}

std::size_t dataset_size(SplitMix64& rng) {
    // Log-uniform in [1k, 50k].
    return static_cast<std::size_t>(std::exp(rng.uniform(std::log(1000.0), std::log(50000.0))));
}

Outcome mutual_exclusion_and_bijection(bool& bijection_ok, std::string& bijection_detail) {
    SplitMix64 rng(20240601);
    const int runs = quick ? 8 : 50;
    int brute = 0, grid = 0, failures = 0, bij_fail = 0;
    std::size_t largest = 0;
    for (int run = 0; run < runs; ++run) {
        const std::size_t n = run < 10 ? 1000 + rng.below(4001) : dataset_size(rng);
        const auto pts = dataset(run, n, rng.next());
        const auto tr = transcribe(pts, {});
        const auto placed = pack_nodes(tr.nodes, {});
        const bool small = n <= 5000;
        const auto v = small ? check_mutual_exclusion_brute(placed, RadiusField::pack, 1e-6)
                             : check_mutual_exclusion(placed, RadiusField::pack, 1e-6);
        (small ? brute : grid) += 1;
        if (!v.empty()) ++failures;
        largest = std::max(largest, n);

        std::vector<std::int64_t> ids;
        for (const auto& node : placed)
            if (!node.is_dummy()) ids.push_back(*node.source_index);
        std::sort(ids.begin(), ids.end());
        bool ok = ids.size() == n;
        for (std::size_t i = 0; ok && i < n; ++i) ok = ids[i] == static_cast<std::int64_t>(i);
        if (!ok) ++bij_fail;
    }
    bijection_ok = bij_fail == 0;
    bijection_detail = fmt("%d/%d runs preserve count and source indices", runs - bij_fail, runs);
    return {failures == 0, fmt("%d runs (%d brute, %d grid, N up to %zu), %d with overlaps", runs, brute, grid,
                               largest, failures)};
}

Outcome metric_identity() {
    SplitMix64 rng(77);
    double worst = 0.0;
    int cases = 0;
    for (int t = 0; t < 20; ++t) {
        const auto pts = dataset(t, 200 + rng.below(800), rng.next());
        std::vector<Vec2> s;
        for (const auto& p : pts) s.push_back({p.x, p.y});
        const auto m = evaluate_metrics({s, s});
        worst = std::max({worst, std::fabs(m.displacement), std::fabs(m.knn - 1.0), std::fabs(m.density),
                          std::fabs(m.overall - 1.0)});
        ++cases;
    }
    double shape_worst = 0.0;
    for (int rings = 1; rings <= 6; ++rings) {
        // Rings at radii j * h with h = max / n put every point on a circle.
        std::vector<Vec2> s;
        for (int j = 1; j <= rings; ++j)
            for (int a = 0; a < 4; ++a) {
                const Vec2 dir = a == 0 ? Vec2{1, 0} : a == 1 ? Vec2{0, 1} : a == 2 ? Vec2{-1, 0} : Vec2{0, -1};
                s.push_back(static_cast<double>(j) * dir);
            }
        shape_worst = std::max(shape_worst, std::fabs(shape_preservation({s, s}, rings)));
    }
    const bool ok = worst <= 1e-9 && shape_worst <= 1e-9;
    return {ok, fmt("%d identity pairs, max deviation %.3g; ring fixtures shape %.3g", cases, worst, shape_worst)};
}

Outcome metric_oracles() {
    SplitMix64 rng(4242);
    const int instances = quick ? 40 : 200;
    double worst = 0.0;
    for (int t = 0; t < instances; ++t) {
        const std::size_t n = 31 + rng.below(270);
        std::vector<Vec2> s(n), r(n);
        const bool lattice = t % 4 == 0;  // exercise tie-breaking
        for (std::size_t i = 0; i < n; ++i) {
            if (lattice) {
                s[i] = {std::floor(rng.uniform(0, 12)), std::floor(rng.uniform(0, 12))};
                r[i] = {std::floor(rng.uniform(0, 12)), std::floor(rng.uniform(0, 12))};
            } else {
                s[i] = {rng.uniform(-50, 50), rng.uniform(-20, 20)};
                r[i] = 0.5 * s[i] + Vec2{rng.uniform(-8, 8), rng.uniform(-8, 8)};
            }
        }
        const ScatterPair pair{s, r};
        const double diffs[] = {
            std::fabs(displacement(pair) - oracle::displacement(s, r)),
            std::fabs(knn_preservation(pair, 10) - oracle::knn_preservation(s, r, 10)),
            std::fabs(shape_preservation(pair, 20) - oracle::shape_preservation(s, r, 20)),
            std::fabs(density_preservation(pair, 10) - oracle::density_preservation(s, r, 10)),
            std::fabs(overall_similarity(pair, 30) - oracle::overall_similarity(s, r, 30)),
        };
        for (double d : diffs) worst = std::max(worst, d);
    }
    return {worst <= 1e-12, fmt("%d instances, N <= 300, max |fast - oracle| = %.3g", instances, worst)};
}

double time_pack(std::size_t n, std::uint64_t seed) {
    const auto nodes = unit_disk_nodes(n, seed);
    const auto t0 = std::chrono::steady_clock::now();
    const auto placed = pack_nodes(nodes, {});
    const double s = seconds_since(t0);
    if (placed.size() != n) return 1e9;
    return s;
}

Outcome performance() {
    const double t1m = quick ? 0.0 : time_pack(1000000, 1);
    const double t100k = time_pack(100000, 2);
    std::vector<double> xs, ys;
    double max_ratio = 0.0, prev = 0.0;
    for (std::size_t n = 10000; n <= 640000; n *= 2) {
        if (quick && n > 160000) break;
        const double t = std::min(time_pack(n, n), time_pack(n, n + 1));
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(t));
        if (prev > 0.0) max_ratio = std::max(max_ratio, t / prev);
        prev = t;
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    const bool ok = t1m <= 30.0 && t100k <= 3.0 && slope >= 1.0 && slope <= 1.7;
    return {ok, fmt("1M nodes %.2fs (<= 30), 100k %.2fs (<= 3), log-log slope %.3f over 10k..640k "
                    "(max doubling ratio %.2f)",
                    t1m, t100k, slope, max_ratio)};
}

Outcome monotonicity() {
    int violations = 0;
    double worst_r = 1.0;
    for (int d = 0; d < 5; ++d) {
        const auto pts = dataset(d, 10000, 900 + static_cast<std::uint64_t>(d));
        std::size_t prev = 0;
        for (int k = 1; k <= 20; ++k) {
            LayoutParams p;
            p.k = k;
            const auto n = transcribed_count(pts, p);
            if (n < prev) ++violations;
            prev = n;
        }
        prev = std::numeric_limits<std::size_t>::max();
        for (int size = 1; size <= 10; ++size) {
            LayoutParams p;
            p.size = size;
            const auto n = transcribed_count(pts, p);
            if (n > prev) ++violations;
            prev = n;
        }
        // Sampling-rate sweep: N' against rate should be close to a straight line.
        std::vector<double> rate, np;
        for (int step = 1; step <= 10; ++step) {
            const auto sample = subsample(pts, step / 10.0, static_cast<std::uint64_t>(step));
            rate.push_back(step / 10.0);
            np.push_back(static_cast<double>(transcribed_count(sample, {})));
            if (np.size() > 1 && np.back() < np[np.size() - 2]) ++violations;
        }
        const double mr = std::accumulate(rate.begin(), rate.end(), 0.0) / rate.size();
        const double mn = std::accumulate(np.begin(), np.end(), 0.0) / np.size();
        double sab = 0, saa = 0, sbb = 0;
        for (std::size_t i = 0; i < rate.size(); ++i) {
            sab += (rate[i] - mr) * (np[i] - mn);
            saa += (rate[i] - mr) * (rate[i] - mr);
            sbb += (np[i] - mn) * (np[i] - mn);
        }
        worst_r = std::min(worst_r, sab / std::sqrt(saa * sbb));
    }
    const bool ok = violations == 0 && worst_r >= 0.98;
    return {ok, fmt("5 datasets, %d monotonicity violations (k 1..20, size 1..10, rate 0.1..1); "
                    "min Pearson r of N' vs rate %.4f (>= 0.98)",
                    violations, worst_r)};
}

Outcome distribution() {
    const int runs = quick ? 3 : 10;
    double worst_margin = 1e9, worst_density = 0.0;
    for (int d = 0; d < runs; ++d) {
        const auto pts = gaussian_mixture(10000, 3 + d % 6, 5000 + static_cast<std::uint64_t>(d));
        const auto doc = build_layout(pts, {});
        auto pair = scatter_pair(pts, doc.layout);
        const double overall = overall_similarity(pair, 30);
        const double density = density_preservation(pair, 10);
        SplitMix64 rng(static_cast<std::uint64_t>(d) + 1);
        for (std::size_t i = pair.relaid.size(); i > 1; --i) std::swap(pair.relaid[i - 1], pair.relaid[rng.below(i)]);
        const double baseline = overall_similarity(pair, 30);
        worst_margin = std::min(worst_margin, overall - baseline);
        worst_density = std::max(worst_density, density);
    }
    const bool ok = worst_margin >= 0.5 && worst_density <= 0.15;
    return {ok, fmt("%d clustered datasets, N = 10k: min overall margin over permutation %.3f (>= 0.5), "
                    "max density preservation %.3f (<= 0.15)",
                    runs, worst_margin, worst_density)};
}

Outcome radius_safety() {
    const auto doc = build_layout(gaussian_mixture(10000, 6, 321), {});
    const Layout& base = doc.layout;
    const double d_k = base.model.d_k();
    SplitMix64 rng(99);
    const int curves = quick ? 100 : 1000;
    std::size_t overlaps = 0, dense_nodes = 0;
    for (int c = 0; c < curves; ++c) {
        const auto curve = sample_curve(base.model, rng, doc.sparse_range.first, doc.sparse_range.second);
        const auto out = apply(base, curve);
        std::vector<Node> dense;
        for (const auto& n : out.nodes)
            if (n.density >= d_k) dense.push_back(n);
        dense_nodes = dense.size();
        overlaps += check_mutual_exclusion(dense, RadiusField::draw, base.params.epsilon).size();
    }
    return {overlaps == 0, fmt("%d valid curves on a %zu-node layout (%zu nodes at d >= d_k), %zu r_draw overlaps",
                               curves, base.nodes.size(), dense_nodes, overlaps)};
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "overlapfree_acceptance_det";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto pts = mixed_dataset(20000, 4);
    std::string csv = "x,y\n";
    for (const auto& p : pts) csv += format_double(p.x) + "," + format_double(p.y) + "\n";
    write_text_file((dir / "in.csv").string(), csv);
    RunConfig cfg;
    cfg.input = (dir / "in.csv").string();
    cfg.params.seed = 1234;
    cfg.out_dir = (dir / "a").string();
    run_pipeline(cfg);
    cfg.out_dir = (dir / "b").string();
    run_pipeline(cfg);
    const auto a = read_text_file((dir / "a" / "layout.json").string());
    const auto b = read_text_file((dir / "b" / "layout.json").string());
    std::filesystem::remove_all(dir);
    return {a == b && !a.empty(), fmt("two runs, seed 1234, %zu-byte layout.json %s", a.size(),
                                      a == b ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;

    int failed = 0;
    const auto report = [&](const char* name, const Outcome& o) {
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    };

    bool bij_ok = false;
    std::string bij_detail;
    report("C2 mutual exclusion", mutual_exclusion_and_bijection(bij_ok, bij_detail));
    report("C3 bijection", {bij_ok, bij_detail});
    report("metric identity", metric_identity());
    report("metric oracle equivalence", metric_oracles());
    report("packing performance", performance());
    report("parameter monotonicity", monotonicity());
    report("distribution preservation", distribution());
    report("radius safety", radius_safety());
    report("determinism", determinism());
    return failed == 0 ? 0 : 1;
}
