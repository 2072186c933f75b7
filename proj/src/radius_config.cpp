#include "overlapfree/radius_config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/kd_tree.hpp"

namespace overlapfree {

namespace {

constexpr double kCurveTolerance = 1e-9;

void validate_model(const DensityModel& model) {
    if (!(model.size > 0.0) || !std::isfinite(model.size)) throw ParameterError("size must be positive");
    if (model.k < 1) throw ParameterError("k must be at least 1");
    if (model.num_max < 1) throw ParameterError("num_max must be at least 1");
}

}  // namespace

const char* zone_name(Zone zone) {
    switch (zone) {
        case Zone::safe: return "safe";
        case Zone::unsafe: return "unsafe";
        case Zone::sparse: return "sparse";
        case Zone::restricted: return "restricted";
    }
    return "unknown";
}

RadiusCurve RadiusCurve::make(const DensityModel& model, CurveMode mode, ControlPoint hd,
                              ControlPoint ld, double sparse_min, double sparse_max) {
    validate_model(model);
    const double d_k = model.d_k();
    const double r1 = model.r_pack1();
    if (!std::isfinite(hd.d) || !std::isfinite(hd.r) || !std::isfinite(ld.d) || !std::isfinite(ld.r))
        throw ParameterError("control points must be finite");
    if (hd.d < d_k || hd.d > 1.0) throw ParameterError("HD density must lie in [d_k, 1]");
    const double on_curve = model.r_pack_at(hd.d);
    if (std::fabs(hd.r - on_curve) > kCurveTolerance * on_curve)
        throw ParameterError("HD control point must lie on the r_pack curve");
    if (ld.r < r1 * (1.0 - 1e-12)) throw ParameterError("LD radius falls in the restricted zone");
    if (!(sparse_min <= sparse_max)) throw ParameterError("invalid sparse density range");

    if (mode == CurveMode::ld_right_of_dk) {
        if (ld.d < d_k || ld.d > hd.d) throw ParameterError("LD density must lie in [d_k, d_HD]");
        if (ld.r > model.r_pack_at(ld.d) * (1.0 + 1e-12))
            throw ParameterError("LD control point lies in the unsafe zone");
    } else {
        if (ld.d < 0.0) throw ParameterError("LD local density must be non-negative");
        if (sparse_max > 0.0 && (ld.d < sparse_min || ld.d > sparse_max))
            throw ParameterError("LD local density outside the sparse range");
    }

    RadiusCurve c;
    c.model_ = model;
    c.mode_ = mode;
    c.hd_ = hd;
    c.ld_ = ld;
    c.sparse_min_ = sparse_min;
    c.sparse_max_ = sparse_max;
    return c;
}

RadiusCurve RadiusCurve::default_for(const DensityModel& model, double sparse_min, double sparse_max) {
    validate_model(model);
    const double r1 = model.r_pack1();
    return make(model, CurveMode::ld_right_of_dk, {1.0, r1}, {model.d_k(), r1}, sparse_min, sparse_max);
}

RadiusCurve RadiusCurve::with_hd_at(const DensityModel& model, CurveMode mode, double d_hd,
                                    ControlPoint ld, double sparse_min, double sparse_max) {
    return make(model, mode, {d_hd, model.r_pack_at(d_hd)}, ld, sparse_min, sparse_max);
}

double RadiusCurve::evaluate(double density, double local) const {
    const double d_k = model_.d_k();
    if (mode_ == CurveMode::ld_left_of_dk) {
        if (density < d_k) return local <= ld_.d ? ld_.r : hd_.r;
        if (density < hd_.d) return hd_.r;
        return model_.r_pack_at(density);
    }
    if (density < d_k) return ld_.r;
    if (density <= ld_.d) return ld_.r;
    if (density <= hd_.d) return hd_.r;
    return model_.r_pack_at(density);
}

double evaluate_curve(const RadiusCurve& curve, const Node& node) {
    return curve.evaluate(node.density, node.local_density);
}

Zone classify_zone(double d, double r, const DensityModel& model) {
    if (r < model.r_pack1()) return Zone::restricted;
    if (d < model.d_k()) return Zone::sparse;
    return r <= model.r_pack_at(d) ? Zone::safe : Zone::unsafe;
}

std::vector<double> local_density(const Layout& layout, int K) {
    if (K < 1) throw ParameterError("K must be at least 1");
    const auto& nodes = layout.nodes;
    if (nodes.size() < static_cast<std::size_t>(K) + 1)
        throw ParameterError("local density needs at least K + 1 nodes");
    const double d_k = layout.model.d_k();

    std::vector<Vec2> centers;
    centers.reserve(nodes.size());
    for (const auto& n : nodes) centers.push_back(n.center());
    const detail::KdTree tree(centers);

    std::vector<double> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].density >= d_k) {
            out[i] = nodes[i].density;
            continue;
        }
        const auto d2 = tree.knn_sq_distances(i, static_cast<std::size_t>(K));
        double sum = 0.0;
        for (double v : d2) sum += std::sqrt(v);
        const double mean = sum / static_cast<double>(d2.size());
        out[i] = mean > 0.0 ? 1.0 / mean : std::numeric_limits<double>::max();
    }
    return out;
}

void assign_local_density(Layout& layout, int K) {
    if (layout.nodes.size() < static_cast<std::size_t>(K) + 1) {
        for (auto& n : layout.nodes) n.local_density = n.density;
        return;
    }
    const auto values = local_density(layout, K);
    for (std::size_t i = 0; i < values.size(); ++i) layout.nodes[i].local_density = values[i];
}

std::pair<double, double> sparse_density_range(const Layout& layout) {
    const double d_k = layout.model.d_k();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& n : layout.nodes) {
        if (n.density >= d_k) continue;
        lo = std::min(lo, n.local_density);
        hi = std::max(hi, n.local_density);
    }
    if (lo > hi) return {0.0, 0.0};
    return {lo, hi};
}

Layout apply(const Layout& layout, const RadiusCurve& curve) {
    Layout out = layout;
    for (auto& n : out.nodes)
        if (!n.is_dummy()) n.r_draw = evaluate_curve(curve, n);
    return out;
}

}  // namespace overlapfree
