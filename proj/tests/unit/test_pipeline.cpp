#include <doctest.h>

#include <filesystem>
#include <numeric>

#include "overlapfree/pipeline.hpp"
#include "overlapfree/synthetic.hpp"

using namespace overlapfree;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("overlapfree_unit_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string csv_of(const std::vector<DataPoint>& pts) {
    std::string s = "x,y\n";
    for (const auto& p : pts) s += format_double(p.x) + "," + format_double(p.y) + "\n";
    return s;
}

}  // namespace

TEST_CASE("three point csv through the pipeline") {
    const auto dir = scratch("three");
    write_text_file((dir / "in.csv").string(), "x,y\n0,0\n1,0\n0,1\n");
    RunConfig cfg;
    cfg.input = (dir / "in.csv").string();
    cfg.out_dir = (dir / "out").string();
    const auto r = run_pipeline(cfg);
    CHECK(r.doc.layout.nodes.size() == 3);
    CHECK(check_mutual_exclusion(r.doc.layout, RadiusField::pack).empty());
    const auto doc = read_layout_json(read_text_file((dir / "out" / "layout.json").string()));
    CHECK(doc.layout.nodes.size() == 3);
    CHECK(std::filesystem::exists(dir / "out" / "plot.svg"));
    CHECK_FALSE(std::filesystem::exists(dir / "out" / "metrics.json"));
}

TEST_CASE("same seed gives byte-identical layout.json") {
    const auto dir = scratch("determinism");
    write_text_file((dir / "in.csv").string(), csv_of(mixed_dataset(3000, 12)));
    RunConfig cfg;
    cfg.input = (dir / "in.csv").string();
    cfg.params.seed = 5;
    cfg.out_dir = (dir / "a").string();
    run_pipeline(cfg);
    cfg.out_dir = (dir / "b").string();
    run_pipeline(cfg);
    CHECK(read_text_file((dir / "a" / "layout.json").string()) == read_text_file((dir / "b" / "layout.json").string()));
}

TEST_CASE("metrics beat a random permutation of the packed positions") {
    const auto dir = scratch("metrics");
    const auto pts = gaussian_mixture(10000, 6, 31);
    write_text_file((dir / "in.csv").string(), csv_of(pts));
    RunConfig cfg;
    cfg.input = (dir / "in.csv").string();
    cfg.out_dir = dir.string();
    cfg.metrics = true;
    const auto r = run_pipeline(cfg);
    REQUIRE(r.metrics);
    auto pair = scatter_pair(pts, r.doc.layout);
    SplitMix64 rng(1);
    for (std::size_t i = pair.relaid.size(); i > 1; --i) std::swap(pair.relaid[i - 1], pair.relaid[rng.below(i)]);
    const double baseline = overall_similarity(pair, 30);
    MESSAGE("overall " << r.metrics->overall << " baseline " << baseline);
    CHECK(r.metrics->overall > baseline);
    CHECK(std::filesystem::exists(dir / "metrics.json"));
}

TEST_CASE("curve file is applied") {
    const auto dir = scratch("curve");
    const auto pts = gaussian_mixture(2000, 3, 8);
    write_text_file((dir / "in.csv").string(), csv_of(pts));
    const auto base = build_layout(pts, {});
    const auto& m = base.layout.model;
    const auto curve = RadiusCurve::with_hd_at(m, CurveMode::ld_right_of_dk, 0.5, {m.d_k(), m.r_pack_at(0.5)}, 0, 0);
    write_text_file((dir / "curve.json").string(), write_curve_json(curve));
    RunConfig cfg;
    cfg.input = (dir / "in.csv").string();
    cfg.out_dir = dir.string();
    cfg.curve_path = (dir / "curve.json").string();
    const auto r = run_pipeline(cfg);
    for (const auto& n : r.doc.layout.nodes) CHECK(n.r_draw == curve.evaluate(n.density, n.local_density));
}

TEST_CASE("bench parameter tables") {
    const auto rows = run_bench("k,size,rate", 3);
    std::size_t prev_k = 0, prev_size = std::numeric_limits<std::size_t>::max(), prev_rate = 0;
    std::size_t nk = 0, ns = 0, nr = 0;
    for (const auto& r : rows) {
        if (r.table == "k") {
            CHECK(r.n_prime >= prev_k);
            prev_k = r.n_prime;
            ++nk;
        } else if (r.table == "size") {
            CHECK(r.n_prime <= prev_size);
            prev_size = r.n_prime;
            ++ns;
        } else if (r.table == "rate") {
            CHECK(r.n_prime > prev_rate);
            prev_rate = r.n_prime;
            ++nr;
        }
    }
    CHECK(nk == 20);
    CHECK(ns == 10);
    CHECK(nr == 10);
    CHECK(bench_csv(rows).rfind("table,param,n_prime,time_ms\n", 0) == 0);
    const auto timed = run_bench("time:2000:4000", 1);
    REQUIRE(timed.size() == 2);
    CHECK(timed[1].n_prime == 4000);
    CHECK_THROWS_AS(run_bench("bogus", 1), ParameterError);
}

TEST_CASE("scatter pair requires a matching layout") {
    const auto pts = rings(200, 2);
    const auto doc = build_layout(pts, {});
    const auto pair = scatter_pair(pts, doc.layout);
    CHECK(pair.size() == 200);
    std::vector<DataPoint> fewer(pts.begin(), pts.begin() + 100);
    CHECK_THROWS_AS(scatter_pair(fewer, doc.layout), ParameterError);
}
