#include "overlapfree/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace overlapfree {

namespace {

using json = nlohmann::json;

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Splits one CSV record; double quotes group a field and "" escapes a quote.
bool split_record(const std::string& line, std::vector<std::string>& out) {
    out.clear();
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted) return false;
    out.push_back(trim(field));
    return true;
}

bool parse_number(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::string escape_json(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

const char* mode_name(CurveMode m) {
    return m == CurveMode::ld_left_of_dk ? "ld_left_of_dk" : "ld_right_of_dk";
}

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

PointTable parse_points_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> fields;

    int col_x = -1, col_y = -1, col_cat = -1;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!split_record(line, fields)) throw ParameterError("line " + std::to_string(line_no) + ": unterminated quote");
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const std::string name = lower(fields[c]);
            if (name == "x" && col_x < 0) col_x = static_cast<int>(c);
            else if (name == "y" && col_y < 0) col_y = static_cast<int>(c);
            else if (name == "category" && col_cat < 0) col_cat = static_cast<int>(c);
        }
        width = fields.size();
        break;
    }
    if (col_x < 0 || col_y < 0) throw ParameterError("CSV header must name x and y columns");

    PointTable table;
    std::size_t non_finite = 0;
    std::size_t first_bad = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!split_record(line, fields)) throw ParameterError("line " + std::to_string(line_no) + ": unterminated quote");
        if (fields.size() != width)
            throw ParameterError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                 " fields, found " + std::to_string(fields.size()));
        double x = 0.0, y = 0.0;
        if (!parse_number(fields[static_cast<std::size_t>(col_x)], x) ||
            !parse_number(fields[static_cast<std::size_t>(col_y)], y))
            throw ParameterError("line " + std::to_string(line_no) + ": coordinate is not a number");
        if (!std::isfinite(x) || !std::isfinite(y)) {
            if (non_finite++ == 0) first_bad = line_no;
            continue;
        }
        table.points.push_back({x, y, static_cast<std::int64_t>(table.points.size())});
        if (col_cat >= 0) table.categories.push_back(fields[static_cast<std::size_t>(col_cat)]);
    }
    if (non_finite > 0)
        throw ParameterError(std::to_string(non_finite) + " row(s) with non-finite coordinates (first at line " +
                             std::to_string(first_bad) + ")");
    if (table.points.empty()) throw ParameterError("CSV contains no data rows");
    return table;
}

PointTable read_points_csv(const std::string& path) { return parse_points_csv(read_text_file(path)); }

CanvasTransform CanvasTransform::fit(const BoundingBox& bbox, double width, double height, double margin) {
    if (!(width > 0.0) || !(height > 0.0)) throw ParameterError("canvas must have positive size");
    CanvasTransform t;
    t.width = width;
    t.height = height;
    const double avail_w = std::max(1.0, width - 2.0 * margin);
    const double avail_h = std::max(1.0, height - 2.0 * margin);
    const double bw = bbox.width() > 0.0 ? bbox.width() : 1.0;
    const double bh = bbox.height() > 0.0 ? bbox.height() : 1.0;
    t.scale = std::min(avail_w / bw, avail_h / bh);
    t.offset_x = 0.5 * (width - bbox.width() * t.scale);
    t.offset_y = 0.5 * (height - bbox.height() * t.scale);
    return t;
}

Vec2 CanvasTransform::to_pixel(const BoundingBox& bbox, Vec2 p) const {
    return {(p.x - bbox.min_x) * scale + offset_x, (bbox.max_y - p.y) * scale + offset_y};
}

std::string write_layout_json(const LayoutDocument& doc) {
    const Layout& L = doc.layout;
    const auto f = format_double;
    std::string s;
    s.reserve(256 + L.nodes.size() * 200);
    s += "{\n";
    s += "  \"params\": {\"size\": " + f(L.params.size) + ", \"k\": " + std::to_string(L.params.k) +
         ", \"th\": " + std::to_string(L.params.th) + ", \"seed\": " + std::to_string(L.params.seed) +
         ", \"epsilon\": " + f(L.params.epsilon) + ", \"spread\": " + (L.params.spread ? "true" : "false") +
         "},\n";
    s += "  \"bbox\": {\"min_x\": " + f(L.bbox.min_x) + ", \"min_y\": " + f(L.bbox.min_y) +
         ", \"max_x\": " + f(L.bbox.max_x) + ", \"max_y\": " + f(L.bbox.max_y) + "},\n";
    s += "  \"d_k\": " + f(L.model.d_k()) + ",\n";
    s += "  \"r_pack1\": " + f(L.model.r_pack1()) + ",\n";
    s += "  \"num_max\": " + std::to_string(L.model.num_max) + ",\n";
    s += "  \"sparse_density_range\": [" + f(doc.sparse_range.first) + ", " + f(doc.sparse_range.second) + "],\n";
    s += "  \"canvas\": {\"width\": " + f(doc.canvas.width) + ", \"height\": " + f(doc.canvas.height) +
         ", \"scale\": " + f(doc.canvas.scale) + ", \"offset_x\": " + f(doc.canvas.offset_x) +
         ", \"offset_y\": " + f(doc.canvas.offset_y) + "},\n";
    s += "  \"nodes\": [";
    for (std::size_t i = 0; i < L.nodes.size(); ++i) {
        const Node& n = L.nodes[i];
        s += i == 0 ? "\n" : ",\n";
        s += "    {\"id\": " + std::to_string(n.source_index.value_or(-1)) + ", \"x\": " + f(n.x) +
             ", \"y\": " + f(n.y) + ", \"r_pack\": " + f(n.r_pack) + ", \"r_draw\": " + f(n.r_draw) +
             ", \"density\": " + f(n.density) + ", \"local_density\": " + f(n.local_density);
        if (!doc.categories.empty()) s += ", \"category\": \"" + escape_json(doc.categories[i]) + "\"";
        s += "}";
    }
    s += L.nodes.empty() ? "]\n" : "\n  ]\n";
    s += "}\n";
    return s;
}

LayoutDocument read_layout_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed layout.json: ") + e.what());
    }
    try {
        LayoutDocument doc;
        Layout& L = doc.layout;
        const auto& p = j.at("params");
        L.params.size = p.at("size").get<double>();
        L.params.k = p.at("k").get<int>();
        L.params.th = p.at("th").get<int>();
        L.params.seed = p.at("seed").get<std::uint64_t>();
        L.params.epsilon = p.at("epsilon").get<double>();
        L.params.spread = p.at("spread").get<bool>();
        const auto& b = j.at("bbox");
        L.bbox = {b.at("min_x").get<double>(), b.at("min_y").get<double>(), b.at("max_x").get<double>(),
                  b.at("max_y").get<double>()};
        L.model = {L.params.size, L.params.k, j.at("num_max").get<std::int64_t>()};
        const auto& sr = j.at("sparse_density_range");
        doc.sparse_range = {sr.at(0).get<double>(), sr.at(1).get<double>()};
        const auto& c = j.at("canvas");
        doc.canvas.width = c.at("width").get<double>();
        doc.canvas.height = c.at("height").get<double>();
        doc.canvas.scale = c.at("scale").get<double>();
        doc.canvas.offset_x = c.at("offset_x").get<double>();
        doc.canvas.offset_y = c.at("offset_y").get<double>();
        for (const auto& jn : j.at("nodes")) {
            Node n;
            n.source_index = jn.at("id").get<std::int64_t>();
            n.x = jn.at("x").get<double>();
            n.y = jn.at("y").get<double>();
            n.r_pack = jn.at("r_pack").get<double>();
            n.r_draw = jn.at("r_draw").get<double>();
            n.density = jn.at("density").get<double>();
            n.local_density = jn.at("local_density").get<double>();
            if (jn.contains("category")) doc.categories.push_back(jn.at("category").get<std::string>());
            L.nodes.push_back(n);
        }
        if (!doc.categories.empty() && doc.categories.size() != L.nodes.size())
            throw ParameterError("category present on some nodes only");
        return doc;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed layout.json: ") + e.what());
    }
}

std::string write_curve_json(const RadiusCurve& curve) {
    const auto f = format_double;
    const DensityModel& m = curve.model();
    std::string s = "{\"mode\": \"";
    s += mode_name(curve.mode());
    s += "\", \"hd\": {\"d\": " + f(curve.hd().d) + ", \"r\": " + f(curve.hd().r) + "}";
    s += ", \"ld\": {\"d\": " + f(curve.ld().d) + ", \"r\": " + f(curve.ld().r) + "}";
    s += ", \"d_k\": " + f(curve.d_k()) + ", \"r_pack1\": " + f(curve.r_pack1());
    s += ", \"size\": " + f(m.size) + ", \"k\": " + std::to_string(m.k) + ", \"num_max\": " + std::to_string(m.num_max);
    s += ", \"sparse_density_range\": [" + f(curve.sparse_min()) + ", " + f(curve.sparse_max()) + "]}";
    return s;
}

RadiusCurve read_curve_json(const std::string& text, const DensityModel& model) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed curve JSON: ") + e.what());
    }
    try {
        const std::string mode_s = j.at("mode").get<std::string>();
        CurveMode mode;
        if (mode_s == "ld_left_of_dk") mode = CurveMode::ld_left_of_dk;
        else if (mode_s == "ld_right_of_dk") mode = CurveMode::ld_right_of_dk;
        else throw ParameterError("unknown curve mode '" + mode_s + "'");
        if (j.contains("num_max") && j.at("num_max").get<std::int64_t>() != model.num_max)
            throw ParameterError("curve was made for a different layout (num_max)");
        if (j.contains("k") && j.at("k").get<int>() != model.k)
            throw ParameterError("curve was made for a different layout (k)");
        if (j.contains("size") && std::fabs(j.at("size").get<double>() - model.size) > 1e-12 * model.size)
            throw ParameterError("curve was made for a different layout (size)");
        const ControlPoint hd{j.at("hd").at("d").get<double>(), j.at("hd").at("r").get<double>()};
        const ControlPoint ld{j.at("ld").at("d").get<double>(), j.at("ld").at("r").get<double>()};
        double lo = 0.0, hi = 0.0;
        if (j.contains("sparse_density_range")) {
            lo = j.at("sparse_density_range").at(0).get<double>();
            hi = j.at("sparse_density_range").at(1).get<double>();
        }
        return RadiusCurve::make(model, mode, hd, ld, lo, hi);
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed curve JSON: ") + e.what());
    }
}

std::string write_metrics_json(const MetricReport& r) {
    const auto f = format_double;
    std::string s = "{\n";
    s += "  \"displacement\": " + f(r.displacement) + ",\n";
    s += "  \"knn\": " + f(r.knn) + ",\n";
    s += "  \"shape\": " + f(r.shape) + ",\n";
    s += "  \"density\": " + f(r.density) + ",\n";
    s += "  \"overall\": " + f(r.overall) + ",\n";
    s += "  \"params\": {\"K\": " + std::to_string(r.params.K) + ", \"n_circles\": " +
         std::to_string(r.params.n_circles) + ", \"n_directions\": " + std::to_string(r.params.n_directions) +
         "}\n}\n";
    return s;
}

std::string write_svg(const LayoutDocument& doc) {
    static const char* const palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                          "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
    const auto f = format_double;
    const Layout& L = doc.layout;
    std::vector<std::string> seen;
    std::string s;
    s.reserve(256 + L.nodes.size() * 96);
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f(doc.canvas.width) + "\" height=\"" +
         f(doc.canvas.height) + "\" viewBox=\"0 0 " + f(doc.canvas.width) + " " + f(doc.canvas.height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < L.nodes.size(); ++i) {
        const Node& n = L.nodes[i];
        if (n.is_dummy()) continue;
        std::size_t color = 0;
        if (!doc.categories.empty()) {
            const auto it = std::find(seen.begin(), seen.end(), doc.categories[i]);
            color = static_cast<std::size_t>(it - seen.begin());
            if (it == seen.end()) seen.push_back(doc.categories[i]);
        }
        const Vec2 px = doc.canvas.to_pixel(L.bbox, n.center());
        s += "<circle cx=\"" + f(px.x) + "\" cy=\"" + f(px.y) + "\" r=\"" + f(n.r_draw * doc.canvas.scale) +
             "\" fill=\"" + palette[color % 10] + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ParameterError("failed writing '" + path + "'");
}

}  // namespace overlapfree
