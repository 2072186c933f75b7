#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "overlapfree/core_model.hpp"
#include "overlapfree/metrics.hpp"
#include "overlapfree/radius_config.hpp"

namespace overlapfree {

struct PointTable {
    std::vector<DataPoint> points;
    std::vector<std::string> categories;  // empty when the input has no category column
};

/// Parses CSV text whose header names an x and a y column (any order, case
/// insensitive) and optionally a category column. Throws ParameterError with
/// the line number on malformed rows, and with a count when any coordinate is
/// not finite.
PointTable parse_points_csv(const std::string& text);
PointTable read_points_csv(const std::string& path);

/// Maps packed coordinates into a pixel canvas: px = (x - min_x) * scale + offset_x,
/// py = (max_y - y) * scale + offset_y.
struct CanvasTransform {
    double width = 800.0;
    double height = 800.0;
    double scale = 1.0;
    double offset_x = 0.0;
    double offset_y = 0.0;

    static CanvasTransform fit(const BoundingBox& bbox, double width, double height, double margin = 10.0);
    Vec2 to_pixel(const BoundingBox& bbox, Vec2 p) const;
};

/// Everything layout.json carries. Nodes are data nodes ordered by id.
struct LayoutDocument {
    Layout layout;
    std::vector<std::string> categories;
    CanvasTransform canvas;
    std::pair<double, double> sparse_range{0.0, 0.0};
};

/// Formats a double with 17 significant digits; negative zero prints as 0.
std::string format_double(double v);

std::string write_layout_json(const LayoutDocument& doc);
/// Inverse of write_layout_json; write(read(s)) == s for writer output.
LayoutDocument read_layout_json(const std::string& text);

std::string write_curve_json(const RadiusCurve& curve);
/// Builds and validates a curve against `model`. Throws when the file was made
/// for a different density model or the control points are infeasible.
RadiusCurve read_curve_json(const std::string& text, const DensityModel& model);

std::string write_metrics_json(const MetricReport& report);

/// One <circle> per data node, radius r_draw in pixels, fill from a fixed
/// categorical palette.
std::string write_svg(const LayoutDocument& doc);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace overlapfree
