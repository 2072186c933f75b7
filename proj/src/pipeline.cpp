#include "overlapfree/pipeline.hpp"

#include <algorithm>
#include <filesystem>

#include "overlapfree/transcriptor.hpp"

namespace overlapfree {

LayoutDocument build_layout(std::span<const DataPoint> points, const LayoutParams& params,
                            double canvas_width, double canvas_height, PackStats* stats) {
    const TranscriptionResult tr = transcribe(points, params);
    PackOptions opts;
    opts.th = params.th;
    LayoutDocument doc;
    Layout& layout = doc.layout;
    layout = pack(tr.nodes, opts, stats);
    std::sort(layout.nodes.begin(), layout.nodes.end(),
              [](const Node& a, const Node& b) { return *a.source_index < *b.source_index; });
    const int th = layout.params.th;
    layout.params = params;
    layout.params.th = th;
    layout.model = tr.model;
    assign_local_density(layout);
    doc.sparse_range = sparse_density_range(layout);
    doc.canvas = CanvasTransform::fit(layout.bbox, canvas_width, canvas_height);
    return doc;
}

ScatterPair scatter_pair(std::span<const DataPoint> points, const Layout& layout) {
    ScatterPair pair;
    pair.original.resize(points.size());
    pair.relaid.resize(points.size());
    std::vector<char> seen(points.size(), 0);
    for (const DataPoint& p : points) {
        if (p.index < 0 || static_cast<std::size_t>(p.index) >= points.size())
            throw ParameterError("point indices must be 0..N-1");
        pair.original[static_cast<std::size_t>(p.index)] = {p.x, p.y};
    }
    if (layout.data_node_count() != points.size()) throw ParameterError("layout does not match the point set");
    for (const Node& n : layout.nodes) {
        if (n.is_dummy()) continue;
        const auto i = static_cast<std::size_t>(*n.source_index);
        if (i >= points.size() || seen[i]) throw ParameterError("layout does not match the point set");
        seen[i] = 1;
        pair.relaid[i] = n.center();
    }
    return pair;
}

RunOutcome run_pipeline(const RunConfig& config) {
    const PointTable table = read_points_csv(config.input);
    RunOutcome out;
    out.doc = build_layout(table.points, config.params, config.canvas_width, config.canvas_height, &out.stats);
    out.doc.categories = table.categories;
    if (config.curve_path) {
        const RadiusCurve curve = read_curve_json(read_text_file(*config.curve_path), out.doc.layout.model);
        out.doc.layout = apply(out.doc.layout, curve);
    }

    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    write_text_file((dir / "layout.json").string(), write_layout_json(out.doc));
    write_text_file((dir / "plot.svg").string(), write_svg(out.doc));
    if (config.metrics) {
        out.metrics = evaluate_metrics(scatter_pair(table.points, out.doc.layout), config.metric_params);
        write_text_file((dir / "metrics.json").string(), write_metrics_json(*out.metrics));
    }
    return out;
}

RadiusCurve sample_curve(const DensityModel& model, SplitMix64& rng, double sparse_min, double sparse_max) {
    const double d_k = model.d_k();
    const double r1 = model.r_pack1();
    const double d_hd = rng.uniform(d_k, 1.0);
    if (rng.uniform() < 0.5) {
        const double d_ld = rng.uniform(d_k, d_hd);
        const double r_ld = rng.uniform(r1, model.r_pack_at(d_ld));
        return RadiusCurve::with_hd_at(model, CurveMode::ld_right_of_dk, d_hd, {d_ld, r_ld}, sparse_min, sparse_max);
    }
    const double lo = sparse_max > 0.0 ? sparse_min : 0.0;
    const double hi = sparse_max > 0.0 ? sparse_max : 1.0;
    const double r_ld = rng.uniform(r1, 3.0 * model.r_pack_at(d_k));
    return RadiusCurve::with_hd_at(model, CurveMode::ld_left_of_dk, d_hd, {rng.uniform(lo, hi), r_ld}, sparse_min,
                                   sparse_max);
}

std::string curve_test_vectors(std::size_t count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::string s = "{\"vectors\": [";
    std::size_t emitted = 0;
    while (emitted < count) {
        DensityModel model;
        model.size = rng.uniform(1.0, 10.0);
        model.k = 1 + static_cast<int>(rng.below(10));
        model.num_max = 1 + static_cast<std::int64_t>(rng.below(500));
        const double lo = rng.uniform(0.0, 0.5);
        const double hi = lo + rng.uniform(0.0, 1.0);
        const RadiusCurve curve = sample_curve(model, rng, lo, hi);
        const double d_k = model.d_k();
        // Boundary densities first, then random ones on both sides of d_k.
        std::vector<std::pair<double, double>> probes = {
            {d_k, 0.0}, {curve.hd().d, 0.0}, {1.0, 0.0}, {0.5 * d_k, curve.ld().d}};
        if (curve.mode() == CurveMode::ld_right_of_dk) probes.push_back({curve.ld().d, 0.0});
        probes.push_back({rng.uniform(0.0, d_k), rng.uniform(lo, hi)});
        probes.push_back({rng.uniform(d_k, 1.0), 0.0});
        const std::string cj = write_curve_json(curve);
        for (const auto& [d, local] : probes) {
            if (emitted == count) break;
            const double r = curve.evaluate(d, local);
            s += emitted == 0 ? "\n" : ",\n";
            s += "  {\"curve\": " + cj + ", \"density\": " + format_double(d) +
                 ", \"local_density\": " + format_double(local) + ", \"r_draw\": " + format_double(r) +
                 ", \"zone\": \"" + zone_name(classify_zone(d, r, model)) + "\"}";
            ++emitted;
        }
    }
    s += "\n]}\n";
    return s;
}

}  // namespace overlapfree
