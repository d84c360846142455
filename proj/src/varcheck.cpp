#include "warpcheck/varcheck.hpp"

#include <cmath>

#include "warpcheck/errors.hpp"

namespace warpcheck::varcheck {

double Scenario::area() const {
    double a = 0.0;
    for (const auto& s : samples) a += s.mu;
    return a;
}

void Scenario::validate() const {
    if (leaf_dim < 3)
        throw InvalidDimension("leaf dimension must be >= 3 (ambient n >= 4)");
    if (S0 > 0) throw InvalidParams("S0 must be <= 0");
    if (samples.empty()) throw InvalidParams("scenario has no samples");
    for (const auto& s : samples) {
        if (!(s.mu > 0) || !std::isfinite(s.mu))
            throw InvalidParams("weights must be positive and finite");
        if (s.B2 < 0) throw InvalidParams("B2 must be >= 0");
        if (s.gradf2 < 0) throw InvalidParams("gradf2 must be >= 0");
        if (!std::isfinite(s.S) || !std::isfinite(s.S_M) || !std::isfinite(s.RicNN) ||
            !std::isfinite(s.f))
            throw InvalidParams("scenario fields must be finite");
    }
}

double second_variation_value(const Scenario& s) {
    double acc = 0.0;
    for (const auto& x : s.samples)
        acc += x.mu * (x.gradf2 - (x.RicNN + x.B2) * x.f * x.f);
    return acc;
}

double holder_slack(std::span<const double> weights, std::span<const double> f, int m) {
    if (m < 3) throw InvalidDimension("holder slack needs leaf dimension >= 3");
    if (weights.size() != f.size()) throw InvalidParams("weights/f length mismatch");
    const double p = 2.0 * m / (m - 2.0);
    double area = 0.0, sum_f2 = 0.0, sum_fp = 0.0;
    for (size_t i = 0; i < weights.size(); ++i) {
        area += weights[i];
        sum_f2 += weights[i] * f[i] * f[i];
        sum_fp += weights[i] * std::pow(std::abs(f[i]), p);
    }
    return std::pow(area, 2.0 / m) * std::pow(sum_fp, (m - 2.0) / m) - sum_f2;
}

ChainResult chain_evaluate(const Scenario& s) {
    s.validate();
    const int m = s.leaf_dim;
    const double conf_coeff = 4.0 * (m - 1.0) / (m - 2.0); // > 2 for m >= 3
    const double p = 2.0 * m / (m - 2.0);

    double area = 0.0;
    double sum_grad = 0.0;            // mu gradf2
    double sum_f2 = 0.0;              // mu f^2
    double sum_B2f2 = 0.0;            // mu B2 f^2
    double sum_Sf2 = 0.0;             // mu S f^2
    double sum_SMf2 = 0.0;            // mu S_M f^2
    double sum_SM_minus_S0_f2 = 0.0;  // mu (S_M - S0) f^2
    double sum_fp = 0.0;              // mu |f|^p
    double v_stab1 = 0.0;

    for (const auto& x : s.samples) {
        const double f2 = x.f * x.f;
        area += x.mu;
        sum_grad += x.mu * x.gradf2;
        sum_f2 += x.mu * f2;
        sum_B2f2 += x.mu * x.B2 * f2;
        sum_Sf2 += x.mu * x.S * f2;
        sum_SMf2 += x.mu * x.S_M * f2;
        sum_SM_minus_S0_f2 += x.mu * (x.S_M - s.S0) * f2;
        sum_fp += x.mu * std::pow(std::abs(x.f), p);
        v_stab1 += x.mu * (x.gradf2 - (x.RicNN + x.B2) * f2);
    }

    const double denom = std::pow(sum_fp, (m - 2.0) / m);
    if (!(denom > 0)) throw InvalidParams("trial function is identically zero");

    // The displayed lines. After the Gauss substitution each line drops a
    // nonnegative quantity, so the raw values are nondecreasing.
    const double v_gauss = 2.0 * sum_grad + sum_Sf2 - sum_SMf2 - sum_B2f2;
    const double v_drop_B = 2.0 * sum_grad + sum_Sf2 - sum_SMf2;
    const double v_enlarge = conf_coeff * sum_grad + sum_Sf2 - sum_SMf2;
    const double v_lower = conf_coeff * sum_grad + sum_Sf2 - s.S0 * sum_f2;
    const double hslack =
        std::pow(area, 2.0 / m) * denom - sum_f2; // Holder slack on this data
    const double v_holder = conf_coeff * sum_grad + sum_Sf2 -
                            s.S0 * std::pow(area, 2.0 / m) * denom;

    ChainResult r;
    r.leaf_dim = m;
    r.denom = denom;
    r.steps = {
        {"second_variation", v_stab1, v_stab1 / denom, 0.0},
        {"gauss_substitution", v_gauss, v_gauss / denom, v_gauss - 2.0 * v_stab1},
        {"drop_second_form", v_drop_B, v_drop_B / denom, sum_B2f2},
        {"enlarge_gradient", v_enlarge, v_enlarge / denom, (conf_coeff - 2.0) * sum_grad},
        {"scalar_lower_bound", v_lower, v_lower / denom, sum_SM_minus_S0_f2},
        {"holder", v_holder, v_holder / denom, -s.S0 * hslack},
    };
    r.quotient_bound = (conf_coeff * sum_grad + sum_Sf2) / denom;
    r.s0_area_term = s.S0 * std::pow(area, 2.0 / m);
    r.final_gap = r.quotient_bound - r.s0_area_term;
    return r;
}

Scenario equality_scenario(int leaf_dim, double S0, int n_samples) {
    Scenario s;
    s.leaf_dim = leaf_dim;
    s.S0 = S0;
    s.samples.resize(static_cast<size_t>(n_samples));
    for (auto& x : s.samples) x = {1.0, S0, S0, 0.0, 0.0, 1.0, 0.0};
    return s;
}

} // namespace warpcheck::varcheck
