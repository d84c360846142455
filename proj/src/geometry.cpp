#include "warpcheck/geometry.hpp"

#include <cmath>
#include <sstream>

#include "warpcheck/deriv2.hpp"
#include "warpcheck/errors.hpp"

namespace warpcheck::geometry {

using series::Deriv2;
using series::Jet;
using series::RationalDeriv2;
using series::ScalarExpr;

double unit_sphere_volume(int dim) {
    if (dim < 1) throw InvalidParams("sphere dimension must be >= 1");
    const double d = dim;
    return 2.0 * std::pow(M_PI, (d + 1.0) / 2.0) / std::tgamma((d + 1.0) / 2.0);
}

FactorSpace::FactorSpace(int dim_, Rational sec_curv_, double volume_, std::string label_)
    : dim(dim_), sec_curv(std::move(sec_curv_)), volume(volume_), label(std::move(label_)) {
    if (dim < 1) throw InvalidParams("factor dimension must be >= 1");
    if (!(volume > 0)) throw InvalidParams("factor volume must be positive");
    if (dim == 1) sec_curv = 0; // a circle carries no curvature
}

int WarpedMetric::ambient_dim() const {
    int d = 1;
    for (const auto& f : factors) d += f.dim;
    return d;
}

WarpedMetric from_coefficients(std::vector<FactorSpace> factors,
                               const std::vector<series::ScalarExpr>& coeffs,
                               double half_width) {
    WarpedMetric m;
    m.factors = std::move(factors);
    m.warps.reserve(coeffs.size());
    for (const auto& c : coeffs) m.warps.push_back(sqrt(c));
    m.half_width = half_width;
    return m;
}

void validate(const WarpedMetric& m, int grid_points) {
    if (m.factors.size() != m.warps.size())
        throw InvalidParams("factor/warp count mismatch");
    if (m.factors.empty()) throw InvalidParams("metric needs at least one factor");
    if (!(m.half_width > 0)) throw InvalidParams("half width must be positive");
    if (grid_points < 3) grid_points = 3;
    for (size_t i = 0; i < m.warps.size(); ++i) {
        for (int j = 0; j < grid_points; ++j) {
            const double t = -m.half_width +
                             2.0 * m.half_width * j / (grid_points - 1);
            const double v = series::eval(m.warps[i], t);
            if (!(v > 0)) {
                std::ostringstream os;
                os << "warp " << i << " (`" << m.warps[i].str()
                   << "`) is nonpositive at t = " << t;
                throw DomainError(os.str());
            }
        }
    }
}

namespace {

void require_in_window(const WarpedMetric& m, double t) {
    if (std::abs(t) > m.half_width) {
        std::ostringstream os;
        os << "t = " << t << " outside [-eps, eps], eps = " << m.half_width;
        throw DomainError(os.str());
    }
}

// Per-factor warp data f, f', f'' in one numeric mode.
template <class Num>
struct WarpData {
    Num f, fp, fpp, f_at_0;
};

std::vector<WarpData<Deriv2>> warp_data(const WarpedMetric& m, double t) {
    require_in_window(m, t);
    std::vector<WarpData<Deriv2>> out;
    out.reserve(m.warps.size());
    for (size_t i = 0; i < m.warps.size(); ++i) {
        const Deriv2 d = series::eval_d2(m.warps[i], t);
        const Deriv2 d0 = series::eval_d2(m.warps[i], 0.0);
        if (!(d.value > 0)) {
            std::ostringstream os;
            os << "warp " << i << " nonpositive at t = " << t;
            throw DomainError(os.str());
        }
        out.push_back({Deriv2::constant(d.value), Deriv2::constant(d.d1),
                       Deriv2::constant(d.d2), Deriv2::constant(d0.value)});
    }
    return out;
}

std::vector<WarpData<RationalDeriv2>> warp_data_exact(const WarpedMetric& m,
                                                      const Rational& t) {
    require_in_window(m, to_double(t));
    std::vector<WarpData<RationalDeriv2>> out;
    out.reserve(m.warps.size());
    for (size_t i = 0; i < m.warps.size(); ++i) {
        const RationalDeriv2 d = series::eval_d2_exact(m.warps[i], t);
        const RationalDeriv2 d0 = series::eval_d2_exact(m.warps[i], Rational(0));
        if (sign_of(d.value) <= 0) {
            throw DomainError("warp " + std::to_string(i) +
                              " nonpositive at t = " + to_string(t));
        }
        out.push_back({RationalDeriv2::constant(d.value),
                       RationalDeriv2::constant(d.d1),
                       RationalDeriv2::constant(d.d2),
                       RationalDeriv2::constant(d0.value)});
    }
    return out;
}

// Jets of warps are expanded two orders high so that f'' still reaches the
// requested order.
std::vector<WarpData<Jet>> warp_data_jets(const WarpedMetric& m, int order) {
    std::vector<WarpData<Jet>> out;
    out.reserve(m.warps.size());
    for (const auto& w : m.warps) {
        Jet f = series::expand(w, order + 2);
        if (sign_of(f.coeff(0)) <= 0)
            throw DomainError("warp `" + w.str() + "` nonpositive at t = 0");
        Jet fp = derivative(f);
        Jet fpp = derivative(fp);
        Jet f0 = Jet::constant(f.coeff(0), order + 2);
        out.push_back({std::move(f), std::move(fp), std::move(fpp), std::move(f0)});
    }
    return out;
}

template <class Num>
Num make_num(const Rational& q, const Num& like);

template <>
Deriv2 make_num<Deriv2>(const Rational& q, const Deriv2&) {
    return Deriv2::constant(to_double(q));
}
template <>
RationalDeriv2 make_num<RationalDeriv2>(const Rational& q, const RationalDeriv2&) {
    return RationalDeriv2::constant(q);
}
template <>
Jet make_num<Jet>(const Rational& q, const Jet& like) {
    return Jet::constant(q, like.order());
}

template <class Num>
struct LeafQuantities {
    Num H, B2, ric, S_leaf, S_amb, area_ratio;
};

// S^M = sum S_i/f_i^2 - 2 sum d_i f_i''/f_i - sum d_i(d_i-1) kappa_i^2
//       - sum_{i != j} d_i d_j kappa_i kappa_j,
// with the cross sum read off from H^2 - sum (d_i kappa_i)^2.
template <class Num>
LeafQuantities<Num> assemble(const WarpedMetric& m, const std::vector<WarpData<Num>>& w) {
    if (w.empty()) throw InvalidParams("metric needs at least one factor");
    const Num zero = make_num<Num>(Rational(0), w[0].f);
    const Num one = make_num<Num>(Rational(1), w[0].f);

    Num H = zero, B2 = zero, S_leaf = zero;
    Num sum_ddm1_k2 = zero;  // sum d_i (d_i - 1) kappa_i^2
    Num sum_dk_sq = zero;    // sum (d_i kappa_i)^2
    Num sum_fpp_term = zero; // sum d_i f_i''/f_i
    Num area_num = one, area_den = one;

    for (size_t i = 0; i < m.factors.size(); ++i) {
        const auto& fs = m.factors[i];
        const Num d = make_num<Num>(Rational(fs.dim), w[0].f);
        const Num kappa = w[i].fp / w[i].f;
        const Num fpp_over_f = w[i].fpp / w[i].f;

        H = H + d * kappa;
        B2 = B2 + d * kappa * kappa;
        sum_fpp_term = sum_fpp_term + d * fpp_over_f;
        sum_ddm1_k2 = sum_ddm1_k2 +
                      make_num<Num>(Rational(fs.dim) * Rational(fs.dim - 1), w[0].f) *
                          kappa * kappa;
        sum_dk_sq = sum_dk_sq + (d * kappa) * (d * kappa);
        S_leaf = S_leaf + make_num<Num>(fs.scalar_curvature(), w[0].f) / (w[i].f * w[i].f);

        area_num = area_num * pow(w[i].f, fs.dim);
        area_den = area_den * pow(w[i].f_at_0, fs.dim);
    }

    LeafQuantities<Num> q{zero, zero, zero, zero, zero, zero};
    q.H = H;
    q.B2 = B2;
    q.ric = -sum_fpp_term;
    q.S_leaf = S_leaf;
    const Num cross = H * H - sum_dk_sq;
    q.S_amb = S_leaf - make_num<Num>(Rational(2), w[0].f) * sum_fpp_term -
              sum_ddm1_k2 - cross;
    q.area_ratio = area_num / area_den;
    return q;
}

LeafQuantities<Deriv2> leaf_float(const WarpedMetric& m, double t) {
    return assemble(m, warp_data(m, t));
}

LeafQuantities<Jet> leaf_jet_raw(const WarpedMetric& m, int order) {
    return assemble(m, warp_data_jets(m, order));
}

} // namespace

std::vector<PrincipalCurvature> weingarten_profile(const WarpedMetric& m, double t) {
    const auto w = warp_data(m, t);
    std::vector<PrincipalCurvature> out;
    out.reserve(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        out.push_back({w[i].fp.value / w[i].f.value, m.factors[i].dim, m.factors[i].label});
    return out;
}

std::vector<JetCurvature> weingarten_jets(const WarpedMetric& m, int order) {
    const auto w = warp_data_jets(m, order);
    std::vector<JetCurvature> out;
    out.reserve(w.size());
    for (size_t i = 0; i < w.size(); ++i)
        out.push_back({truncated(w[i].fp / w[i].f, order), m.factors[i].dim,
                       m.factors[i].label});
    return out;
}

double mean_curvature(const WarpedMetric& m, double t) { return leaf_float(m, t).H.value; }
double second_form_norm_sq(const WarpedMetric& m, double t) { return leaf_float(m, t).B2.value; }
double normal_ricci(const WarpedMetric& m, double t) { return leaf_float(m, t).ric.value; }
double leaf_scalar(const WarpedMetric& m, double t) { return leaf_float(m, t).S_leaf.value; }
double ambient_scalar(const WarpedMetric& m, double t) { return leaf_float(m, t).S_amb.value; }
double area_ratio(const WarpedMetric& m, double t) { return leaf_float(m, t).area_ratio.value; }

double leaf_area(const WarpedMetric& m, double t) {
    double base = 1.0;
    for (size_t i = 0; i < m.factors.size(); ++i) {
        base *= m.factors[i].volume;
        base *= std::pow(series::eval(m.warps[i], 0.0), m.factors[i].dim);
    }
    return area_ratio(m, t) * base;
}

Jet mean_curvature_jet(const WarpedMetric& m, int order) {
    return truncated(leaf_jet_raw(m, order).H, order);
}
Jet second_form_norm_sq_jet(const WarpedMetric& m, int order) {
    return truncated(leaf_jet_raw(m, order).B2, order);
}
Jet normal_ricci_jet(const WarpedMetric& m, int order) {
    return truncated(leaf_jet_raw(m, order).ric, order);
}
Jet leaf_scalar_jet(const WarpedMetric& m, int order) {
    return truncated(leaf_jet_raw(m, order).S_leaf, order);
}
Jet ambient_scalar_jet(const WarpedMetric& m, int order) {
    return truncated(leaf_jet_raw(m, order).S_amb, order);
}
Jet area_ratio_jet(const WarpedMetric& m, int order) {
    return truncated(leaf_jet_raw(m, order).area_ratio, order);
}

LeafReport leaf_report(const WarpedMetric& m, double t) {
    const auto q = leaf_float(m, t);
    return {t,          q.H.value,     q.B2.value,        q.ric.value,
            q.S_leaf.value, q.S_amb.value, q.area_ratio.value};
}

LeafJets leaf_jets(const WarpedMetric& m, int order) {
    auto q = leaf_jet_raw(m, order);
    return {truncated(q.H, order),      truncated(q.B2, order),
            truncated(q.ric, order),    truncated(q.S_leaf, order),
            truncated(q.S_amb, order),  truncated(q.area_ratio, order)};
}

LeafExact leaf_exact(const WarpedMetric& m, const Rational& t) {
    const auto q = assemble(m, warp_data_exact(m, t));
    return {q.H.value,      q.B2.value,    q.ric.value,
            q.S_leaf.value, q.S_amb.value, q.area_ratio.value};
}

Jet gauss_residual(const WarpedMetric& m, int order) {
    const auto q = leaf_jet_raw(m, order);
    const Jet two = Jet::constant(2, q.H.order());
    return truncated(two * q.ric - (q.S_amb - q.S_leaf + q.H * q.H - q.B2), order);
}

Jet evolution_residual(const WarpedMetric& m, int order) {
    // The lapse is leaf-constant for warped products, so the Laplacian term
    // of the evolution equation drops: H' + Ric(dt,dt) + |B|^2 = 0.
    const auto q = leaf_jet_raw(m, order + 1);
    return truncated(derivative(q.H) + truncated(q.ric + q.B2, q.H.order() - 1), order);
}

Jet first_variation_residual(const WarpedMetric& m, int order) {
    // d/dt log(area ratio) = H for leaf-constant lapse.
    const auto q = leaf_jet_raw(m, order + 1);
    const Jet d_log_area = derivative(q.area_ratio) / truncated(q.area_ratio, q.area_ratio.order() - 1);
    return truncated(d_log_area - truncated(q.H, d_log_area.order()), order);
}

double graph_area(const WarpedMetric& m, const GraphProfile& profile) {
    const size_t n = profile.heights.size();
    if (profile.grad_norm_sq.size() != n || profile.base_weights.size() != n)
        throw InvalidParams("graph profile arrays must have equal length");
    double total = 0.0;
    for (size_t j = 0; j < n; ++j) {
        const double u = profile.heights[j];
        if (u < 0 || u >= m.half_width) {
            std::ostringstream os;
            os << "graph height " << u << " outside [0, eps), eps = " << m.half_width;
            throw DomainError(os.str());
        }
        double warp_factor = 1.0;
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const double f = series::eval(m.warps[i], u);
            if (!(f > 0)) throw DomainError("nonpositive warp on graph");
            warp_factor *= std::pow(f, m.factors[i].dim);
        }
        total += profile.base_weights[j] *
                 std::sqrt(1.0 + profile.grad_norm_sq[j]) * warp_factor;
    }
    return total;
}

WarpedMetric rescaled(const WarpedMetric& m, const Rational& c) {
    WarpedMetric out = m;
    for (auto& w : out.warps) w = ScalarExpr::constant(c) * w;
    return out;
}

} // namespace warpcheck::geometry
