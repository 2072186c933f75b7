#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "overlapfree/pipeline.hpp"
#include "overlapfree/transcriptor.hpp"

namespace py = pybind11;
using namespace overlapfree;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Vec2> to_points(const Array& a) {
    if (a.ndim() != 2 || a.shape(1) != 2) throw ParameterError("expected an (N, 2) array");
    auto v = a.unchecked<2>();
    std::vector<Vec2> out(static_cast<std::size_t>(a.shape(0)));
    for (py::ssize_t i = 0; i < a.shape(0); ++i) out[static_cast<std::size_t>(i)] = {v(i, 0), v(i, 1)};
    return out;
}

std::vector<DataPoint> to_data(const Array& a) {
    const auto p = to_points(a);
    std::vector<DataPoint> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = {p[i].x, p[i].y, static_cast<std::int64_t>(i)};
    return out;
}

Array column(const std::vector<Node>& nodes, double Node::*field) {
    Array out(static_cast<py::ssize_t>(nodes.size()));
    auto w = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < nodes.size(); ++i) w(static_cast<py::ssize_t>(i)) = nodes[i].*field;
    return out;
}

Array positions(const std::vector<Node>& nodes) {
    Array out({static_cast<py::ssize_t>(nodes.size()), py::ssize_t{2}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        w(static_cast<py::ssize_t>(i), 0) = nodes[i].x;
        w(static_cast<py::ssize_t>(i), 1) = nodes[i].y;
    }
    return out;
}

LayoutParams make_params(double size, int k, int th, std::uint64_t seed, bool spread) {
    LayoutParams p;
    p.size = size;
    p.k = k;
    p.th = th;
    p.seed = seed;
    p.spread = spread;
    return p;
}

std::vector<Node> circles(const Array& centers, const Array& radii) {
    const auto c = to_points(centers);
    if (radii.ndim() != 1 || static_cast<std::size_t>(radii.shape(0)) != c.size())
        throw ParameterError("radii must be a vector matching the centers");
    auto r = radii.unchecked<1>();
    std::vector<Node> nodes(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        nodes[i].x = c[i].x;
        nodes[i].y = c[i].y;
        nodes[i].r_pack = nodes[i].r_draw = r(static_cast<py::ssize_t>(i));
        nodes[i].source_index = static_cast<std::int64_t>(i);
    }
    return nodes;
}

py::dict layout_dict(const LayoutDocument& doc) {
    const Layout& L = doc.layout;
    py::dict d;
    d["positions"] = positions(L.nodes);
    d["r_pack"] = column(L.nodes, &Node::r_pack);
    d["r_draw"] = column(L.nodes, &Node::r_draw);
    d["density"] = column(L.nodes, &Node::density);
    d["local_density"] = column(L.nodes, &Node::local_density);
    d["d_k"] = L.model.d_k();
    d["r_pack1"] = L.model.r_pack1();
    d["num_max"] = L.model.num_max;
    d["th"] = L.params.th;
    d["bbox"] = py::make_tuple(L.bbox.min_x, L.bbox.min_y, L.bbox.max_x, L.bbox.max_y);
    d["sparse_density_range"] = py::make_tuple(doc.sparse_range.first, doc.sparse_range.second);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Overlap-free scatterplot layout: transcription, polar packing, radius curves and metrics.";

    m.def(
        "layout",
        [](const Array& points, double size, int k, int th, std::uint64_t seed, bool spread) {
            const auto data = to_data(points);
            LayoutDocument doc;
            {
                py::gil_scoped_release release;
                doc = build_layout(data, make_params(size, k, th, seed, spread));
            }
            return layout_dict(doc);
        },
        py::arg("points"), py::arg("size") = 5.0, py::arg("k") = 3, py::arg("th") = 0, py::arg("seed") = 0,
        py::arg("spread") = true,
        "Transcribe and pack an (N, 2) point array. Row i of every output array belongs to input row i.");

    m.def(
        "layout_json",
        [](const Array& points, double size, int k, int th, std::uint64_t seed, bool spread) {
            return write_layout_json(build_layout(to_data(points), make_params(size, k, th, seed, spread)));
        },
        py::arg("points"), py::arg("size") = 5.0, py::arg("k") = 3, py::arg("th") = 0, py::arg("seed") = 0,
        py::arg("spread") = true, "Same as layout() but returns the layout.json text.");

    m.def(
        "transcribe",
        [](const Array& points, double size, int k, std::uint64_t seed, bool spread) {
            const auto r = transcribe(to_data(points), make_params(size, k, 0, seed, spread));
            py::array_t<std::int64_t> source(static_cast<py::ssize_t>(r.nodes.size()));
            auto w = source.mutable_unchecked<1>();
            for (std::size_t i = 0; i < r.nodes.size(); ++i)
                w(static_cast<py::ssize_t>(i)) = r.nodes[i].source_index.value_or(-1);
            py::dict d;
            d["positions"] = positions(r.nodes);
            d["r_pack"] = column(r.nodes, &Node::r_pack);
            d["r_draw"] = column(r.nodes, &Node::r_draw);
            d["density"] = column(r.nodes, &Node::density);
            d["source_index"] = source;
            d["num_max"] = r.num_max;
            d["d_k"] = r.d_k;
            return d;
        },
        py::arg("points"), py::arg("size") = 5.0, py::arg("k") = 3, py::arg("seed") = 0, py::arg("spread") = true,
        "Circles for every grid; source_index is -1 on dummy nodes.");

    m.def(
        "pack",
        [](const Array& centers, const Array& radii, int th) {
            auto nodes = circles(centers, radii);
            std::vector<Node> placed;
            {
                py::gil_scoped_release release;
                PackOptions opts;
                opts.th = th;
                placed = pack_nodes(nodes, opts);
            }
            return positions(placed);
        },
        py::arg("centers"), py::arg("radii"), py::arg("th") = 0,
        "Pack circles with the polar front-chain rule. Returns the new (N, 2) centers.");

    m.def(
        "check_mutual_exclusion",
        [](const Array& centers, const Array& radii, double epsilon) {
            return check_mutual_exclusion(circles(centers, radii), RadiusField::pack, epsilon);
        },
        py::arg("centers"), py::arg("radii"), py::arg("epsilon") = 1e-6, "Overlapping index pairs (i < j).");

    m.def(
        "tangent_position",
        [](double r, std::pair<double, double> c1, double r1, std::pair<double, double> c2, double r2, bool left) {
            const auto p = tangent_position(r, Circle{{c1.first, c1.second}, r1}, Circle{{c2.first, c2.second}, r2},
                                            left ? Side::left : Side::right);
            if (!p) throw ParameterError("no tangent position");
            return std::make_pair(p->x, p->y);
        },
        py::arg("r"), py::arg("c1"), py::arg("r1"), py::arg("c2"), py::arg("r2"), py::arg("left") = true);

    m.def(
        "metrics",
        [](const Array& original, const Array& relaid, int K, int n_circles, int n_directions) {
            const ScatterPair pair{to_points(original), to_points(relaid)};
            MetricReport r;
            {
                py::gil_scoped_release release;
                r = evaluate_metrics(pair, {K, n_circles, n_directions});
            }
            py::dict d;
            d["displacement"] = r.displacement;
            d["knn"] = r.knn;
            d["shape"] = r.shape;
            d["density"] = r.density;
            d["overall"] = r.overall;
            return d;
        },
        py::arg("original"), py::arg("relaid"), py::arg("K") = 10, py::arg("n_circles") = 20,
        py::arg("n_directions") = 30, "The five preservation scores of an index-aligned pair.");

    m.def(
        "evaluate_curve",
        [](const std::string& curve_json, double size, int k, std::int64_t num_max, const Array& density,
           const Array& local) {
            const DensityModel model{size, k, num_max};
            const auto curve = read_curve_json(curve_json, model);
            if (density.ndim() != 1 || local.ndim() != 1 || density.shape(0) != local.shape(0))
                throw ParameterError("density and local density must be matching vectors");
            auto d = density.unchecked<1>();
            auto l = local.unchecked<1>();
            Array out(density.shape(0));
            auto w = out.mutable_unchecked<1>();
            for (py::ssize_t i = 0; i < density.shape(0); ++i) w(i) = curve.evaluate(d(i), l(i));
            return out;
        },
        py::arg("curve_json"), py::arg("size"), py::arg("k"), py::arg("num_max"), py::arg("density"),
        py::arg("local_density"), "r_draw for each density under a curve JSON.");

    m.def("curve_test_vectors", &curve_test_vectors, py::arg("count") = 200, py::arg("seed") = 0);
}
