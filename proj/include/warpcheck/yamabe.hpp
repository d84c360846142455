#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace warpcheck::yamabe {

/// Trial function on a periodic N1 x N2 x N3 grid over a constant-scalar
/// background (space-form product), with one quadrature weight per cell.
struct GridField {
    std::array<int, 3> dims{1, 1, 1};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    std::vector<double> values;
    double metric_scalar = 0.0;
    double cell_weight = 1.0;

    int size() const { return dims[0] * dims[1] * dims[2]; }
    double total_volume() const { return cell_weight * size(); }
    double& at(int i, int j, int k);
    double at(int i, int j, int k) const;

    /// Flat torus [0, length)^3 with n cells per axis, cell weights h^3.
    static GridField flat_torus(int n, double scalar = 0.0, double length = 1.0);

    void validate() const;
};

/// Quotient of a constant trial function on a constant-S background:
/// S * Vol^{2/m}. Throws InvalidDimension for m < 3.
double quotient_constant(double S, double vol, int m);

/// Discrete conformal quotient with centered-difference gradients and
/// cell-weight quadrature:
///   [ sum w (4(m-1)/(m-2) |grad f|^2 + S f^2) ] / [ sum w f^{2m/(m-2)} ]^{(m-2)/m}.
/// Throws ZeroField when f vanishes identically.
double quotient_of_field(const GridField& g, int m);

struct MinimizeOptions {
    int max_iters = 50000;
    double step = -1.0; // < 0: default 1e-2 * (min spacing)^2
    double positivity_floor = 1e-8; // clamp at floor * max(f)
};

struct MinimizeResult {
    double q_est;
    GridField f_min;
    int accepted_steps = 0;
    int evaluations = 0;
    bool converged = true;
    std::string note;
    std::vector<double> q_trace; // quotient after each accepted step, nonincreasing
};

/// Projected gradient descent on the quotient with positivity clamp and
/// normalization after each step; deterministic given inputs. The quotient
/// value is nonincreasing along accepted steps; a hit iteration cap with an
/// oscillating quotient is reported in `note`, not fatal.
MinimizeResult minimize_quotient(const GridField& start, int m,
                                 MinimizeOptions opts = {});

/// Deterministic positive random field in [0.5, 1.5), for seeded starts.
GridField random_positive_field(int n, double scalar, double length, std::uint64_t seed);

} // namespace warpcheck::yamabe
