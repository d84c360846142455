#pragma once

#include <span>
#include <string>
#include <vector>

namespace warpcheck::varcheck {

/// One quadrature sample of the leaf data entering the stability chain.
struct Sample {
    double mu;     // weight, > 0
    double S;      // leaf scalar curvature
    double S_M;    // ambient scalar curvature
    double B2;     // |B|^2 >= 0
    double RicNN;  // normal Ricci
    double f;      // trial function
    double gradf2; // |grad f|^2 >= 0
};

/// Discretized measure-space data for the stability/quotient chain.
/// Pure quadrature data; no mesh topology.
struct Scenario {
    int leaf_dim = 3; // m = n - 1 >= 3
    double S0 = 0.0;  // <= 0
    std::vector<Sample> samples;

    double area() const; // total weight
    /// Throws InvalidDimension / InvalidParams on malformed data.
    void validate() const;
};

/// Integral of |grad f|^2 - (Ric(nu,nu) + |B|^2) f^2; stability of a minimal
/// hypersurface makes this nonnegative.
double second_variation_value(const Scenario& s);

struct ChainStep {
    std::string name;
    double value;      // the displayed integral on this line
    double normalized; // value / (integral f^{2m/(m-2)})^{(m-2)/m}
    double slack;      // dropped quantity vs the previous line (>= 0 in exact arithmetic)
};

struct ChainResult {
    std::vector<ChainStep> steps;
    double denom;          // (sum mu f^{2m/(m-2)})^{(m-2)/m}
    double quotient_bound; // top line / denom, an upper bound for S0 A^{2/m}
    double s0_area_term;   // S0 * A^{2/m}
    double final_gap;      // quotient_bound - s0_area_term = last value / denom
    int leaf_dim;
};

/// Evaluates every displayed line of the stability chain on the scenario.
/// Exponents are taken in leaf dimension m: conformal coefficient
/// 4(m-1)/(m-2), integrability exponent 2m/(m-2).
ChainResult chain_evaluate(const Scenario& s);

/// A^{2/m} (sum mu f^{2m/(m-2)})^{(m-2)/m} - sum mu f^2  >=  0,
/// with equality exactly for constant f.
double holder_slack(std::span<const double> weights, std::span<const double> f, int m);

/// The configuration where every inequality of the chain is an equality:
/// S = S_M = S0 on all samples, B2 = RicNN = gradf2 = 0, f = 1.
Scenario equality_scenario(int leaf_dim, double S0, int n_samples);

} // namespace warpcheck::varcheck
