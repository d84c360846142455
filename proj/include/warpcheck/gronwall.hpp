#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace warpcheck::gronwall {

/// Sampled data for the integro-differential inequality
///   H'(t) <= -(S0 / ((n-1) phi(t))) * integral_0^t H(s) xi(s) ds
/// on an increasing grid 0 = t_0 < ... < t_N = eps, with H(0) = 0,
/// phi >= C1 > 0 and 0 < xi <= C2.
struct GronwallData {
    std::vector<double> grid;
    std::vector<double> H;
    std::vector<double> phi;
    std::vector<double> xi;
    double S0 = 0.0; // <= 0
    int n = 4;       // ambient dimension >= 3
    double C1 = 1.0;
    double C2 = 1.0;

    double epsilon() const { return grid.empty() ? 0.0 : grid.back(); }
    void validate() const; // throws InvalidParams on malformed data
};

/// C3 = -S0 C2 / ((n-1) C1); the admissible window is eps < C3^{-1/2}.
/// Zero when S0 = 0 (unbounded window). Throws ZeroDenominator when C1 or
/// n - 1 vanish.
double c3(const GronwallData& d);

struct ResidualReport {
    std::vector<double> residuals; // forward-difference H' minus the bound, per point
    std::vector<double> rhs;       // the integral bound at each point
    std::size_t source_points = 0; // grid size this was computed from

    double max_residual() const;
    bool satisfied(double tol) const { return max_residual() <= tol; }
};

/// Forward differences for H', trapezoid rule for the integral.
/// All residuals <= tol means the data satisfies the inequality.
ResidualReport inequality_residuals(const GronwallData& d);

struct Verdict {
    bool pass;
    double max_H;
    std::size_t witness_index; // grid point of max H (meaningful on failure)
    std::string detail;
};

/// Asserts max H <= tol * (1 + eps) given that the inequality residual check
/// ran and passed; throws PreconditionUnchecked when `check` was not produced
/// from this data, and InvalidParams when the residuals exceed tol or
/// (for S0 < 0) when eps >= C3^{-1/2}.
Verdict conclude_nonpositive(const GronwallData& d, const ResidualReport& check,
                             double tol);

struct SearchReport {
    int trials = 0;
    int violations = 0;
    std::vector<std::uint64_t> passing_seeds; // would falsify the checker; expect empty
    double min_violation = 0.0;               // smallest max-residual over trials
};

/// Over random smooth H with H(0) = 0 and a positive bump, verifies that
/// every one violates the inequality somewhere on the grid of `templ`.
SearchReport counterexample_search(const GronwallData& templ, int trials,
                                   std::uint64_t seed);

/// Uniform grid helper: N+1 points on [0, eps].
std::vector<double> uniform_grid(double eps, int n_intervals);

} // namespace warpcheck::gronwall
