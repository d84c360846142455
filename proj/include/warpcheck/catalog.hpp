#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "warpcheck/geometry.hpp"

namespace warpcheck::cat {

enum class Quantity { H, RicNN, SAmbientMinusS0, AreaRatioMinus1 };
enum class ClaimKind {
    VanishingOrder,
    LeadingSign,
    LeadingCoeff,
    NonnegOnWindow,
    NonposOnWindow,
    IdenticallyZero,
};
enum class Provenance { Paper, Derived, Trivial };

std::string to_string(Quantity q);
std::string to_string(ClaimKind k);
std::string to_string(Provenance p);

struct ExpectedClaim {
    Quantity quantity;
    ClaimKind kind;
    Rational value;    // order / sign (+1,-1) / exact coefficient; unused for windows
    double window_max; // for window kinds; 0 means "entry default window"
    Provenance provenance;
    std::string anchor; // for Paper claims: the stated formula being checked
    std::string note;   // extra context, e.g. a disputed stated coefficient
};

struct CatalogEntry {
    std::string name;
    geometry::WarpedMetric metric;
    std::map<std::string, double> params; // n, k, m, ell, ...
    Rational s0;                          // the entry's scalar curvature baseline
    std::vector<ExpectedClaim> expected;

    double sign_window() const; // min(eps, 0.1), the default window for sign claims
};

// Builders for the catalog constructions.
geometry::FactorSpace sphere_factor(int dim, std::string label); // unit round sphere
geometry::FactorSpace sphere_factor_radius(int dim, const Rational& radius_sq, std::string label);
geometry::FactorSpace flat_factor(int dim, double volume, std::string label);
geometry::FactorSpace hyperbolic_factor(int dim, double volume, std::string label);

/// The three doubly warped constructions. Case 1 and 2 need n >= 4,
/// case 3 needs n >= 5 (its sphere radius is undefined at n = 4).
CatalogEntry build_case(int case_no, int n);
CatalogEntry build_torus3(int k);
CatalogEntry build_perturbed_torus(int k, int m);
CatalogEntry build_intro_sphere(int k);
CatalogEntry build_mm_sphere();
CatalogEntry build_positive_sigma_example(int n, double ell);
/// Product of a closed hyperbolic 3-manifold with the interval; the equality
/// model where every comparison hypothesis holds.
CatalogEntry build_hyperbolic_product(double volume);

/// The eight built-in constructions (default parameters).
std::vector<CatalogEntry> default_catalog();
/// Default catalog plus parameter sweeps; what `verify-paper` runs.
std::vector<CatalogEntry> extended_catalog();

struct ClaimResult {
    ExpectedClaim claim;
    bool pass;
    std::string expected_text;
    std::string computed_text;
    std::string method; // "exact jet", "exact grid", "float grid"
};

std::vector<ClaimResult> check_entry(const CatalogEntry& entry,
                                     int jet_order = series::Jet::default_order,
                                     int grid_points = 1001);

enum class TriState { Holds, Fails, Unknown };
std::string to_string(TriState t);

/// The four comparison hypotheses evaluated on a catalog entry:
/// (i) totally geodesic central leaf, (ii) vanishing normal Ricci at t = 0,
/// (iii) S^M minimized along the central leaf, (iv) induced metric attains
/// the sigma constant.
struct HypothesisReport {
    TriState i, ii, iii, iv;
    std::string evidence_i, evidence_ii, evidence_iii, evidence_iv;
    double sm_at_zero;
    double sm_grid_inf;
};
HypothesisReport hypothesis_check(const CatalogEntry& entry, int grid_points = 1001);

/// A product of space forms is Einstein iff the Ricci eigenvalue
/// (d_i - 1) k_i is the same on every factor.
bool einstein_product_check(const std::vector<geometry::FactorSpace>& factors);

enum class Sign { Negative, Zero, Positive, Unknown };
std::string to_string(Sign s);

struct SigmaFacts {
    std::optional<double> sigma_value;
    Sign sign = Sign::Unknown;
    TriState attains = TriState::Unknown;
    bool einstein = false;
    std::string source;
};

/// Sigma-constant bookkeeping for the leaf at t = 0 of a catalog metric.
/// Values are cataloged for flat leaves, single round spheres, closed
/// hyperbolic 3-manifolds and sphere-times-circle products; otherwise only
/// the sign may be known.
SigmaFacts sigma_facts(const geometry::WarpedMetric& m);

/// sigma(leaf) - S0 * A(leaf)^{2/m}; zero picks out the splitting equality
/// configuration. Throws SigmaUnknown when the leaf's sigma is not cataloged
/// and InvalidParams when S0 > 0.
double equality_gap(const geometry::WarpedMetric& m, double S0);

} // namespace warpcheck::cat
