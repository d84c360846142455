#include "warpcheck/yamabe.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "warpcheck/errors.hpp"

namespace warpcheck::yamabe {

double& GridField::at(int i, int j, int k) {
    return values[static_cast<size_t>((i * dims[1] + j) * dims[2] + k)];
}
double GridField::at(int i, int j, int k) const {
    return values[static_cast<size_t>((i * dims[1] + j) * dims[2] + k)];
}

GridField GridField::flat_torus(int n, double scalar, double length) {
    if (n < 1) throw InvalidParams("grid size must be >= 1");
    GridField g;
    g.dims = {n, n, n};
    const double h = length / n;
    g.spacing = {h, h, h};
    g.values.assign(static_cast<size_t>(n) * n * n, 1.0);
    g.metric_scalar = scalar;
    g.cell_weight = h * h * h;
    return g;
}

void GridField::validate() const {
    if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1)
        throw InvalidParams("grid dims must be >= 1");
    if (values.size() != static_cast<size_t>(size()))
        throw InvalidParams("value array does not match grid dims");
    if (!(cell_weight > 0)) throw InvalidParams("cell weight must be positive");
    for (double s : spacing)
        if (!(s > 0)) throw InvalidParams("grid spacing must be positive");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidParams("field must be finite");
}

double quotient_constant(double S, double vol, int m) {
    if (m < 3) throw InvalidDimension("quotient needs dimension >= 3");
    if (!(vol > 0)) throw InvalidParams("volume must be positive");
    return S * std::pow(vol, 2.0 / m);
}

namespace {

struct QuotientParts {
    double numerator;   // sum w (a |grad f|^2 + S f^2)
    double lp_integral; // sum w |f|^p
};

// Centered differences with periodic wrap; an axis of extent 1 contributes
// no gradient (its neighbor is the cell itself).
QuotientParts quotient_parts(const GridField& g, int m) {
    const double a = 4.0 * (m - 1.0) / (m - 2.0);
    const double p = 2.0 * m / (m - 2.0);
    const int N0 = g.dims[0], N1 = g.dims[1], N2 = g.dims[2];
    double num = 0.0, lp = 0.0;
    for (int i = 0; i < N0; ++i) {
        for (int j = 0; j < N1; ++j) {
            for (int k = 0; k < N2; ++k) {
                const double f = g.at(i, j, k);
                const double gx = (g.at((i + 1) % N0, j, k) - g.at((i + N0 - 1) % N0, j, k)) /
                                  (2.0 * g.spacing[0]);
                const double gy = (g.at(i, (j + 1) % N1, k) - g.at(i, (j + N1 - 1) % N1, k)) /
                                  (2.0 * g.spacing[1]);
                const double gz = (g.at(i, j, (k + 1) % N2) - g.at(i, j, (k + N2 - 1) % N2)) /
                                  (2.0 * g.spacing[2]);
                num += g.cell_weight *
                       (a * (gx * gx + gy * gy + gz * gz) + g.metric_scalar * f * f);
                lp += g.cell_weight * std::pow(std::abs(f), p);
            }
        }
    }
    return {num, lp};
}

// d/df_j of the numerator: the field enters the centered difference of both
// neighbors along each axis, plus the 2 S f term.
std::vector<double> numerator_gradient(const GridField& g, int m) {
    const double a = 4.0 * (m - 1.0) / (m - 2.0);
    const int N0 = g.dims[0], N1 = g.dims[1], N2 = g.dims[2];
    std::vector<double> grad(g.values.size(), 0.0);
    auto idx = [&](int i, int j, int k) {
        return static_cast<size_t>((i * N1 + j) * N2 + k);
    };
    for (int i = 0; i < N0; ++i) {
        for (int j = 0; j < N1; ++j) {
            for (int k = 0; k < N2; ++k) {
                double acc = 2.0 * g.metric_scalar * g.at(i, j, k);
                if (N0 > 1) {
                    const double inv = 1.0 / (2.0 * g.spacing[0]);
                    const double g_minus = (g.at(i, j, k) - g.at((i + N0 - 2) % N0, j, k)) * inv;
                    const double g_plus = (g.at((i + 2) % N0, j, k) - g.at(i, j, k)) * inv;
                    acc += 2.0 * a * inv * (g_minus - g_plus);
                }
                if (N1 > 1) {
                    const double inv = 1.0 / (2.0 * g.spacing[1]);
                    const double g_minus = (g.at(i, j, k) - g.at(i, (j + N1 - 2) % N1, k)) * inv;
                    const double g_plus = (g.at(i, (j + 2) % N1, k) - g.at(i, j, k)) * inv;
                    acc += 2.0 * a * inv * (g_minus - g_plus);
                }
                if (N2 > 1) {
                    const double inv = 1.0 / (2.0 * g.spacing[2]);
                    const double g_minus = (g.at(i, j, k) - g.at(i, j, (k + N2 - 2) % N2)) * inv;
                    const double g_plus = (g.at(i, j, (k + 2) % N2) - g.at(i, j, k)) * inv;
                    acc += 2.0 * a * inv * (g_minus - g_plus);
                }
                grad[idx(i, j, k)] = g.cell_weight * acc;
            }
        }
    }
    return grad;
}

} // namespace

double quotient_of_field(const GridField& g, int m) {
    if (m < 3) throw InvalidDimension("quotient needs dimension >= 3");
    g.validate();
    bool all_zero = true;
    for (double v : g.values)
        if (v != 0.0) { all_zero = false; break; }
    if (all_zero) throw ZeroField("trial field is identically zero");
    const auto parts = quotient_parts(g, m);
    return parts.numerator / std::pow(parts.lp_integral, (m - 2.0) / m);
}

MinimizeResult minimize_quotient(const GridField& start, int m, MinimizeOptions opts) {
    if (m < 3) throw InvalidDimension("quotient needs dimension >= 3");
    start.validate();
    for (double v : start.values)
        if (!(v > 0)) throw InvalidParams("initial field must be positive");

    GridField f = start;
    const double h_min = std::min({f.spacing[0], f.spacing[1], f.spacing[2]});
    double step = opts.step > 0 ? opts.step : 1e-2 * h_min * h_min;
    const double p = 2.0 * m / (m - 2.0);
    const double s = (m - 2.0) / static_cast<double>(m);

    auto normalize = [&](GridField& g) {
        // scale so the L^p quadrature is 1; the quotient is scale-invariant
        double lp = 0.0;
        for (double v : g.values) lp += g.cell_weight * std::pow(std::abs(v), p);
        const double c = std::pow(lp, -1.0 / p);
        for (double& v : g.values) v *= c;
    };
    auto clamp_positive = [&](GridField& g) {
        double mx = 0.0;
        for (double v : g.values) mx = std::max(mx, v);
        const double floor_v = opts.positivity_floor * mx;
        for (double& v : g.values) v = std::max(v, floor_v);
    };

    normalize(f);
    MinimizeResult res;
    res.q_est = quotient_of_field(f, m);
    res.f_min = f;
    ++res.evaluations;

    double q_curr = res.q_est;
    int stall = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
        const auto parts = quotient_parts(f, m);
        const double denom = std::pow(parts.lp_integral, s);
        const double q_here = parts.numerator / denom;
        const auto dnum = numerator_gradient(f, m);

        // dQ_i = (dN_i - s Q Lp^{s-1} dLp_i) / Lp^s
        GridField trial = f;
        for (size_t i = 0; i < trial.values.size(); ++i) {
            const double lp_grad = trial.cell_weight * p *
                                   std::pow(std::abs(f.values[i]), p - 1.0) *
                                   (f.values[i] < 0 ? -1.0 : 1.0);
            const double dq =
                (dnum[i] - s * q_here * std::pow(parts.lp_integral, s - 1.0) * lp_grad) /
                denom;
            trial.values[i] = f.values[i] - step * dq;
        }
        clamp_positive(trial);
        normalize(trial);

        const double q_trial = quotient_of_field(trial, m);
        ++res.evaluations;
        if (q_trial <= q_curr) {
            f = std::move(trial);
            const double drop = q_curr - q_trial;
            q_curr = q_trial;
            ++res.accepted_steps;
            res.q_trace.push_back(q_curr);
            step *= 1.2;
            if (q_curr < res.q_est) {
                res.q_est = q_curr;
                res.f_min = f;
            }
            if (drop < 1e-17 * (1.0 + std::abs(q_curr))) {
                if (++stall > 20) break;
            } else {
                stall = 0;
            }
        } else {
            step *= 0.5;
            if (step < 1e-18) break;
        }
    }
    if (res.accepted_steps == 0) {
        res.converged = false;
        res.note = "no accepted descent step; quotient oscillates at the iteration cap";
    }
    return res;
}

GridField random_positive_field(int n, double scalar, double length, std::uint64_t seed) {
    GridField g = GridField::flat_torus(n, scalar, length);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    for (double& v : g.values) v = dist(rng);
    return g;
}

} // namespace warpcheck::yamabe
