// Command-line front end: CSV in, layout.json / plot.svg / metrics.json out.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "overlapfree/pipeline.hpp"

namespace {

bool parse_canvas(const std::string& s, double& w, double& h) {
    const auto x = s.find_first_of("xX");
    if (x == std::string::npos) return false;
    try {
        std::size_t used = 0;
        w = std::stod(s.substr(0, x), &used);
        if (used != x) return false;
        const std::string rest = s.substr(x + 1);
        h = std::stod(rest, &used);
        if (used != rest.size()) return false;
    } catch (const std::exception&) {
        return false;
    }
    return w > 0.0 && h > 0.0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overlap-free scatterplot layout"};
    overlapfree::RunConfig cfg;
    std::string th = "auto";
    std::string canvas = "800x800";
    std::string curve;
    std::string bench;
    std::string vectors;
    bool no_spread = false;

    app.add_option("--input", cfg.input, "CSV with x,y[,category] columns");
    app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    app.add_option("--size", cfg.params.size, "Grid edge in data units")->capture_default_str();
    app.add_option("--k", cfg.params.k, "Minimum nodes per grid")->capture_default_str();
    app.add_option("--th", th, "Subchain half-length or 'auto'")->capture_default_str();
    app.add_option("--seed", cfg.params.seed, "Seed for dummy placement")->capture_default_str();
    app.add_option("--canvas", canvas, "Canvas size WxH in pixels")->capture_default_str();
    app.add_option("--curve", curve, "Radius curve JSON to apply");
    app.add_flag("--metrics", cfg.metrics, "Write metrics.json");
    app.add_option("--knn", cfg.metric_params.K, "K for KNN and density preservation")->capture_default_str();
    app.add_option("--circles", cfg.metric_params.n_circles, "Circles for shape preservation")->capture_default_str();
    app.add_option("--directions", cfg.metric_params.n_directions, "Directions for overall similarity")
        ->capture_default_str();
    app.add_option("--bench", bench, "Benchmark tables: time[:N...], k, size, rate, all");
    app.add_flag("--no-spread", no_spread, "Keep coincident points on top of each other");
    app.add_option("--curve-vectors", vectors, "Write radius-curve test vectors to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (th != "auto") {
            std::size_t used = 0;
            const int v = std::stoi(th, &used);
            if (used != th.size() || v < 1) throw overlapfree::ParameterError("th must be a positive integer or 'auto'");
            cfg.params.th = v;
        }
        if (!parse_canvas(canvas, cfg.canvas_width, cfg.canvas_height))
            throw overlapfree::ParameterError("canvas must look like 800x800");
        cfg.params.spread = !no_spread;
        if (!curve.empty()) cfg.curve_path = curve;

        bool did_something = false;
        if (!vectors.empty()) {
            overlapfree::write_text_file(vectors, overlapfree::curve_test_vectors(200, cfg.params.seed));
            did_something = true;
        }
        if (!bench.empty()) {
            const auto rows = overlapfree::run_bench(bench, cfg.params.seed, &std::cerr);
            std::filesystem::create_directories(cfg.out_dir);
            overlapfree::write_text_file((std::filesystem::path(cfg.out_dir) / "bench.csv").string(),
                                         overlapfree::bench_csv(rows));
            did_something = true;
        }
        if (!cfg.input.empty()) {
            const auto result = overlapfree::run_pipeline(cfg);
            const auto& layout = result.doc.layout;
            std::printf("nodes %zu  th %d  bbox %.6g x %.6g\n", layout.nodes.size(), layout.params.th,
                        layout.bbox.width(), layout.bbox.height());
            if (result.metrics) {
                const auto& m = *result.metrics;
                std::printf("displacement %.6g  knn %.6g  shape %.6g  density %.6g  overall %.6g\n", m.displacement,
                            m.knn, m.shape, m.density, m.overall);
            }
            did_something = true;
        }
        if (!did_something) {
            std::cerr << "nothing to do: pass --input, --bench or --curve-vectors\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
