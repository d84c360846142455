#include "warpcheck/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "warpcheck/errors.hpp"

namespace warpcheck::gronwall {

void GronwallData::validate() const {
    const size_t N = grid.size();
    if (N < 2) throw InvalidParams("grid needs at least two points");
    if (H.size() != N || phi.size() != N || xi.size() != N)
        throw InvalidParams("grid/H/phi/xi lengths differ");
    if (grid.front() != 0.0) throw InvalidParams("grid must start at t = 0");
    for (size_t i = 1; i < N; ++i)
        if (!(grid[i] > grid[i - 1])) throw InvalidParams("grid must be strictly increasing");
    if (H.front() != 0.0) throw InvalidParams("H(0) must be 0");
    if (S0 > 0) throw InvalidParams("S0 must be <= 0");
    if (n < 3) throw InvalidParams("ambient dimension must be >= 3");
    if (!(C1 > 0)) throw InvalidParams("C1 must be positive");
    for (size_t i = 0; i < N; ++i) {
        if (!(phi[i] >= C1)) throw InvalidParams("phi must satisfy phi >= C1 > 0");
        if (!(xi[i] > 0) || !(xi[i] <= C2))
            throw InvalidParams("xi must satisfy 0 < xi <= C2");
        if (!std::isfinite(H[i])) throw InvalidParams("H must be finite");
    }
}

double c3(const GronwallData& d) {
    if (d.n <= 1 || !(d.C1 > 0))
        throw ZeroDenominator("c3 needs n > 1 and C1 > 0");
    if (d.S0 > 0) throw InvalidParams("c3 is defined for S0 <= 0");
    return -d.S0 * d.C2 / ((d.n - 1) * d.C1);
}

double ResidualReport::max_residual() const {
    double mx = -std::numeric_limits<double>::infinity();
    for (double r : residuals) mx = std::max(mx, r);
    return residuals.empty() ? 0.0 : mx;
}

ResidualReport inequality_residuals(const GronwallData& d) {
    d.validate();
    const size_t N = d.grid.size();
    ResidualReport rep;
    rep.source_points = N;
    rep.residuals.reserve(N - 1);
    rep.rhs.reserve(N - 1);

    double integral = 0.0; // trapezoid of H * xi over [0, t_j]
    for (size_t j = 0; j + 1 < N; ++j) {
        const double rhs = -d.S0 / ((d.n - 1) * d.phi[j]) * integral;
        const double dH = (d.H[j + 1] - d.H[j]) / (d.grid[j + 1] - d.grid[j]);
        rep.rhs.push_back(rhs);
        rep.residuals.push_back(dH - rhs);
        integral += 0.5 * (d.H[j] * d.xi[j] + d.H[j + 1] * d.xi[j + 1]) *
                    (d.grid[j + 1] - d.grid[j]);
    }
    return rep;
}

Verdict conclude_nonpositive(const GronwallData& d, const ResidualReport& check,
                             double tol) {
    d.validate();
    if (check.source_points != d.grid.size() ||
        check.residuals.size() + 1 != d.grid.size())
        throw PreconditionUnchecked(
            "residual check missing or not produced from this data");
    if (!check.satisfied(tol))
        throw InvalidParams("data does not satisfy the inequality at this tolerance");
    if (d.S0 < 0) {
        const double bound = 1.0 / std::sqrt(c3(d));
        if (!(d.epsilon() < bound))
            throw InvalidParams("eps must be below C3^{-1/2} when S0 < 0");
    }

    double max_H = -std::numeric_limits<double>::infinity();
    size_t witness = 0;
    for (size_t j = 0; j < d.H.size(); ++j) {
        if (d.H[j] > max_H) {
            max_H = d.H[j];
            witness = j;
        }
    }
    Verdict v;
    v.max_H = max_H;
    v.witness_index = witness;
    v.pass = (max_H <= tol * (1.0 + d.epsilon()));
    v.detail = v.pass ? "H <= 0 up to tolerance on the whole grid"
                      : "H positive at t = " + std::to_string(d.grid[witness]);
    return v;
}

namespace {

// Catmull-Rom interpolation through equally spaced knots on [0, eps].
double spline_value(const std::vector<double>& knots, double eps, double t) {
    const int n = static_cast<int>(knots.size());
    const double x = std::clamp(t / eps, 0.0, 1.0) * (n - 1);
    const int i = std::min(static_cast<int>(x), n - 2);
    const double s = x - i;
    auto at = [&](int j) { return knots[static_cast<size_t>(std::clamp(j, 0, n - 1))]; };
    const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    return 0.5 * ((2.0 * p1) + (-p0 + p2) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * s * s * s);
}

} // namespace

SearchReport counterexample_search(const GronwallData& templ, int trials,
                                   std::uint64_t seed) {
    templ.validate();
    if (templ.S0 < 0) {
        const double bound = 1.0 / std::sqrt(c3(templ));
        if (!(templ.epsilon() < bound))
            throw InvalidParams("template eps must be below C3^{-1/2}");
    }

    SearchReport rep;
    rep.trials = trials;
    rep.min_violation = std::numeric_limits<double>::infinity();
    const double eps = templ.epsilon();
    const double tol = 1e-8;

    for (int trial = 0; trial < trials; ++trial) {
        // per-trial seed derived from the master seed
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (trial + 1));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);

        std::vector<double> knots(6);
        for (;;) {
            knots[0] = 0.0;
            double mx = 0.0;
            for (size_t i = 1; i < knots.size(); ++i) {
                knots[i] = dist(rng);
                mx = std::max(mx, knots[i]);
            }
            if (mx > 0.05) break; // require a genuine positive bump
        }

        GronwallData d = templ;
        for (size_t j = 0; j < d.grid.size(); ++j)
            d.H[j] = spline_value(knots, eps, d.grid[j]);
        d.H[0] = 0.0;

        const auto res = inequality_residuals(d);
        const double mr = res.max_residual();
        rep.min_violation = std::min(rep.min_violation, mr);
        if (mr > tol) ++rep.violations;
        else rep.passing_seeds.push_back(seed + 0x9e3779b97f4a7c15ull * (trial + 1));
    }
    return rep;
}

std::vector<double> uniform_grid(double eps, int n_intervals) {
    if (!(eps > 0) || n_intervals < 1) throw InvalidParams("bad grid request");
    std::vector<double> g(static_cast<size_t>(n_intervals) + 1);
    for (int i = 0; i <= n_intervals; ++i) g[static_cast<size_t>(i)] = eps * i / n_intervals;
    g[0] = 0.0;
    return g;
}

} // namespace warpcheck::gronwall
