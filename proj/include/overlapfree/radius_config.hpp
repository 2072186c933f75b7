#pragma once

#include <span>
#include <string>
#include <vector>

#include "overlapfree/core_model.hpp"

namespace overlapfree {

/// Regions of the (density, radius) quadrant.
enum class Zone { safe, unsafe, sparse, restricted };

const char* zone_name(Zone zone);

/// Where the low-density control point sits relative to the line d = d_k.
enum class CurveMode { ld_left_of_dk, ld_right_of_dk };

struct ControlPoint {
    double d = 0.0;
    double r = 0.0;
};

/// Rendering-radius curve defined by a high-density control point sliding on
/// the r_pack curve and a low-density control point inside the feasible zone.
/// In ld_left_of_dk mode the LD abscissa is a local density d' (reciprocal
/// mean distance to the nearest neighbours); otherwise it is a grid density.
class RadiusCurve {
public:
    /// Validates and builds a curve. Throws ParameterError when HD is off the
    /// r_pack curve, when either point leaves its feasible zone, or when the
    /// model is degenerate.
    static RadiusCurve make(const DensityModel& model, CurveMode mode, ControlPoint hd,
                            ControlPoint ld, double sparse_min, double sparse_max);

    /// HD at density 1 and LD degenerate at (d_k, r_pack1): every node draws at r_pack1.
    static RadiusCurve default_for(const DensityModel& model, double sparse_min = 0.0,
                                   double sparse_max = 0.0);

    /// Builds a curve whose HD point is the r_pack curve at d_hd.
    static RadiusCurve with_hd_at(const DensityModel& model, CurveMode mode, double d_hd,
                                  ControlPoint ld, double sparse_min, double sparse_max);

    const DensityModel& model() const { return model_; }
    CurveMode mode() const { return mode_; }
    ControlPoint hd() const { return hd_; }
    ControlPoint ld() const { return ld_; }
    double d_k() const { return model_.d_k(); }
    double r_pack1() const { return model_.r_pack1(); }
    double sparse_min() const { return sparse_min_; }
    double sparse_max() const { return sparse_max_; }

    /// r_draw for a node of grid density `density`. `local` is consulted only
    /// when density < d_k.
    double evaluate(double density, double local) const;

private:
    RadiusCurve() = default;

    DensityModel model_;
    CurveMode mode_ = CurveMode::ld_right_of_dk;
    ControlPoint hd_;
    ControlPoint ld_;
    double sparse_min_ = 0.0;
    double sparse_max_ = 0.0;
};

double evaluate_curve(const RadiusCurve& curve, const Node& node);

/// Zone of (d, r) for the given density model.
Zone classify_zone(double d, double r, const DensityModel& model);

/// For nodes left of d_k: 1 / mean distance to the K nearest data nodes in
/// packed coordinates. Other nodes keep their grid density. Throws when the
/// layout has fewer than K + 1 data nodes.
std::vector<double> local_density(const Layout& layout, int K = 5);

/// Stores local_density() into each node (no-op on layouts too small to
/// query, where sparse nodes keep their grid density).
void assign_local_density(Layout& layout, int K = 5);

/// Range of local densities over sparse nodes, or (0, 0) when there are none.
std::pair<double, double> sparse_density_range(const Layout& layout);

/// Sets r_draw of every data node from the curve. Positions and r_pack are
/// left untouched.
Layout apply(const Layout& layout, const RadiusCurve& curve);

}  // namespace overlapfree
