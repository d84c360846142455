#pragma once

#include <string>
#include <vector>

#include "warpcheck/jet.hpp"
#include "warpcheck/rational.hpp"
#include "warpcheck/scalar_expr.hpp"

namespace warpcheck::geometry {

/// Volume of the unit round d-sphere.
double unit_sphere_volume(int dim);

/// A constant-curvature closed factor (space form). Curvature data enters
/// the metric solely through (dim, sec_curv); the reference volume is only
/// used for leaf areas and sigma bookkeeping.
struct FactorSpace {
    int dim;
    Rational sec_curv; // forced to 0 when dim == 1
    double volume;
    std::string label;

    FactorSpace(int dim_, Rational sec_curv_, double volume_, std::string label_);

    Rational scalar_curvature() const { // d(d-1)k
        return Rational(dim) * Rational(dim - 1) * sec_curv;
    }
};

/// ds^2 = sum_i f_i(t)^2 g_i + dt^2 on (prod factors) x (-eps, eps).
struct WarpedMetric {
    std::vector<FactorSpace> factors;
    std::vector<series::ScalarExpr> warps; // same length as factors
    double half_width = 0.1;

    int ambient_dim() const;
    int leaf_dim() const { return ambient_dim() - 1; }
};

/// Metric given by coefficients c_i(t) instead of warps; f_i = sqrt(c_i).
WarpedMetric from_coefficients(std::vector<FactorSpace> factors,
                               const std::vector<series::ScalarExpr>& coeffs,
                               double half_width);

/// Checks f_i(0) > 0 and f_i > 0 on [-eps, eps] (sampled grid, not proven).
/// Throws DomainError naming the offending warp and t.
void validate(const WarpedMetric& m, int grid_points = 1001);

struct PrincipalCurvature {
    double kappa; // f_i'/f_i
    int multiplicity;
    std::string label;
};

/// Principal curvatures of the leaf Sigma_t with multiplicities.
std::vector<PrincipalCurvature> weingarten_profile(const WarpedMetric& m, double t);

/// Jet-mode Weingarten data: kappa_i as series at t = 0.
struct JetCurvature {
    series::Jet kappa;
    int multiplicity;
    std::string label;
};
std::vector<JetCurvature> weingarten_jets(const WarpedMetric& m,
                                          int order = series::Jet::default_order);

// Pointwise leaf geometry. All throw DomainError when t is outside
// [-eps, eps] or some warp is nonpositive at t.
double mean_curvature(const WarpedMetric& m, double t);
double second_form_norm_sq(const WarpedMetric& m, double t);
double normal_ricci(const WarpedMetric& m, double t);
double leaf_scalar(const WarpedMetric& m, double t);
double ambient_scalar(const WarpedMetric& m, double t);
double area_ratio(const WarpedMetric& m, double t);
double leaf_area(const WarpedMetric& m, double t);

// Jet-mode leaf geometry at t = 0 (exact rational coefficients).
series::Jet mean_curvature_jet(const WarpedMetric& m, int order = series::Jet::default_order);
series::Jet second_form_norm_sq_jet(const WarpedMetric& m, int order = series::Jet::default_order);
series::Jet normal_ricci_jet(const WarpedMetric& m, int order = series::Jet::default_order);
series::Jet leaf_scalar_jet(const WarpedMetric& m, int order = series::Jet::default_order);
series::Jet ambient_scalar_jet(const WarpedMetric& m, int order = series::Jet::default_order);
series::Jet area_ratio_jet(const WarpedMetric& m, int order = series::Jet::default_order);

/// All leaf quantities at one t.
struct LeafReport {
    double t;
    double H;
    double B_norm_sq;
    double ric_normal;
    double S_leaf;
    double S_ambient;
    double area_ratio;
};
LeafReport leaf_report(const WarpedMetric& m, double t);

struct LeafJets {
    series::Jet H, B_norm_sq, ric_normal, S_leaf, S_ambient, area_ratio;
};
LeafJets leaf_jets(const WarpedMetric& m, int order = series::Jet::default_order);

/// Exact leaf quantities at a rational t; requires sqrt-free warps
/// (throws NotExpandable otherwise). Used for strict sign checks on grids.
struct LeafExact {
    Rational H, B_norm_sq, ric_normal, S_leaf, S_ambient, area_ratio;
};
LeafExact leaf_exact(const WarpedMetric& m, const Rational& t);

// Identity residuals as jets; each is the zero jet for every warped metric.
series::Jet gauss_residual(const WarpedMetric& m, int order = series::Jet::default_order);
series::Jet evolution_residual(const WarpedMetric& m, int order = series::Jet::default_order);
series::Jet first_variation_residual(const WarpedMetric& m, int order = series::Jet::default_order);

/// Sampled graph {(x, u(x))} over the central leaf: heights, |grad u|^2 and
/// reference-measure weights (weights sum to the product of factor volumes).
struct GraphProfile {
    std::vector<double> heights;
    std::vector<double> grad_norm_sq;
    std::vector<double> base_weights;
};

/// Quadrature of sqrt(1 + |grad u|^2) * prod f_i(u(x))^{d_i} against the base
/// weights; equals the leaf area for constant height profiles.
double graph_area(const WarpedMetric& m, const GraphProfile& profile);

/// Metric with every warp multiplied by c; used by scaling tests.
WarpedMetric rescaled(const WarpedMetric& m, const Rational& c);

} // namespace warpcheck::geometry
