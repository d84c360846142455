#include "warpcheck/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "warpcheck/errors.hpp"

namespace warpcheck::cat {

using geometry::FactorSpace;
using geometry::WarpedMetric;
using series::Jet;
using series::ScalarExpr;

std::string to_string(Quantity q) {
    switch (q) {
    case Quantity::H: return "H";
    case Quantity::RicNN: return "Ric(dt,dt)";
    case Quantity::SAmbientMinusS0: return "S^M - S0";
    case Quantity::AreaRatioMinus1: return "area_ratio - 1";
    }
    return "?";
}

std::string to_string(ClaimKind k) {
    switch (k) {
    case ClaimKind::VanishingOrder: return "vanishing_order";
    case ClaimKind::LeadingSign: return "leading_sign";
    case ClaimKind::LeadingCoeff: return "leading_coeff";
    case ClaimKind::NonnegOnWindow: return "nonneg_on_window";
    case ClaimKind::NonposOnWindow: return "nonpos_on_window";
    case ClaimKind::IdenticallyZero: return "identically_zero";
    }
    return "?";
}

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::Paper: return "PAPER";
    case Provenance::Derived: return "DERIVED";
    case Provenance::Trivial: return "TRIVIAL";
    }
    return "?";
}

std::string to_string(TriState t) {
    switch (t) {
    case TriState::Holds: return "holds";
    case TriState::Fails: return "fails";
    case TriState::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(Sign s) {
    switch (s) {
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Positive: return "positive";
    case Sign::Unknown: return "unknown";
    }
    return "?";
}

double CatalogEntry::sign_window() const {
    return std::min(metric.half_width, 0.1);
}

// ---------------------------------------------------------------------------
// Factors
// ---------------------------------------------------------------------------

FactorSpace sphere_factor(int dim, std::string label) {
    return FactorSpace(dim, Rational(1), geometry::unit_sphere_volume(dim),
                       std::move(label));
}

FactorSpace sphere_factor_radius(int dim, const Rational& radius_sq, std::string label) {
    if (sign_of(radius_sq) <= 0) throw InvalidParams("sphere radius^2 must be positive");
    const Rational k = Rational(1) / radius_sq;
    const double vol = geometry::unit_sphere_volume(dim) *
                       std::pow(to_double(radius_sq), dim / 2.0);
    return FactorSpace(dim, k, vol, std::move(label));
}

FactorSpace flat_factor(int dim, double volume, std::string label) {
    return FactorSpace(dim, Rational(0), volume, std::move(label));
}

FactorSpace hyperbolic_factor(int dim, double volume, std::string label) {
    if (dim < 2) throw InvalidParams("hyperbolic factor needs dim >= 2");
    return FactorSpace(dim, Rational(-1), volume, std::move(label));
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {

ExpectedClaim jet_claim(Quantity q, ClaimKind k, Rational value, Provenance p,
                        std::string anchor = "", std::string note = "") {
    return {q, k, std::move(value), 0.0, p, std::move(anchor), std::move(note)};
}

ExpectedClaim window_claim(Quantity q, ClaimKind k, double window, Provenance p,
                           std::string anchor = "") {
    return {q, k, Rational(0), window, p, std::move(anchor), ""};
}

// Largest safe sign window from the S^M jet (the constant shift by S0 does
// not enter). The constructions hold "for some eps > 0"; take 85% of the
// first sign change of c4 t^4 + c6 t^6, capped at 0.1.
double window_from_sm_jet(const WarpedMetric& m) {
    const Jet sm = geometry::ambient_scalar_jet(m, 8);
    const Rational c4 = sm.coeff(4);
    const Rational c6 = sm.coeff(6);
    if (sign_of(c4) <= 0 || sign_of(c6) >= 0) return 0.1;
    const double t_star = std::sqrt(to_double(c4 / -c6));
    return std::min(0.1, 0.85 * t_star);
}

ScalarExpr expr(const std::string& text) { return ScalarExpr::parse(text); }

void check_s0_consistency(const WarpedMetric& m, const Rational& s0,
                          const std::string& name) {
    const Jet sm = geometry::ambient_scalar_jet(m, 2);
    if (sm.coeff(0) != s0)
        throw Error("catalog entry " + name + ": S^M(0) = " +
                    warpcheck::to_string(sm.coeff(0)) + " != declared S0 = " +
                    warpcheck::to_string(s0));
}

} // namespace

CatalogEntry build_case(int case_no, int n) {
    CatalogEntry e;

    if (case_no == 1) {
        if (n < 4) throw UnsupportedDimension("case 1 needs n >= 4");
        const int a = n - 3;
        e.name = "case1_n" + std::to_string(n);
        e.metric.factors = {sphere_factor(2, "S^2"),
                            flat_factor(n - 3, std::pow(2 * M_PI, n - 3), "T^" + std::to_string(n - 3))};
        e.metric.warps = {expr("1/(1 + " + std::to_string(a) + "*t^4)"),
                          expr("1 + 2*t^4 + 2*t^8")};
        e.s0 = 2;
        const Rational A(a);
        e.expected = {
            jet_claim(Quantity::H, ClaimKind::VanishingOrder, 7, Provenance::Paper,
                      "H = c t^7 + O(t^11)"),
            jet_claim(Quantity::H, ClaimKind::LeadingSign, 1, Provenance::Paper,
                      "H(x,t) > 0 for 0 < t < eps"),
            jet_claim(Quantity::H, ClaimKind::LeadingCoeff, rat(8) * A * A,
                      Provenance::Derived, "",
                      "stated leading term 16(n-3)^2 t^7; exact series give 8(n-3)^2 t^7"),
            jet_claim(Quantity::RicNN, ClaimKind::VanishingOrder, 6, Provenance::Paper,
                      "Ric(dt,dt) = -c(n) t^6 + O(t^8)"),
            jet_claim(Quantity::RicNN, ClaimKind::LeadingSign, -1, Provenance::Paper,
                      "c(n) is a positive integer"),
            jet_claim(Quantity::RicNN, ClaimKind::LeadingCoeff,
                      rat(-8) * A * (rat(11) * A + rat(8)), Provenance::Derived),
            jet_claim(Quantity::SAmbientMinusS0, ClaimKind::VanishingOrder, 4,
                      Provenance::Paper, "S^M - S_0 = 4(n-3) t^4 + O(t^6)"),
            jet_claim(Quantity::SAmbientMinusS0, ClaimKind::LeadingCoeff, rat(4) * A,
                      Provenance::Paper, "S^M - S_0 = 4(n-3) t^4 + O(t^6)"),
            window_claim(Quantity::SAmbientMinusS0, ClaimKind::NonnegOnWindow, 0.0,
                         Provenance::Paper, "S^M >= S_0 for sufficiently small eps"),
            jet_claim(Quantity::AreaRatioMinus1, ClaimKind::VanishingOrder, 8,
                      Provenance::Paper, "area element grows by (n-3)^2 t^8 + O(t^12)"),
            jet_claim(Quantity::AreaRatioMinus1, ClaimKind::LeadingCoeff, A * A,
                      Provenance::Paper, "area element grows by (n-3)^2 t^8 + O(t^12)"),
        };
        e.params = {{"n", double(n)}};
    } else if (case_no == 2) {
        if (n < 4) throw UnsupportedDimension("case 2 needs n >= 4");
        const int b = n - 2;
        e.name = "case2_n" + std::to_string(n);
        const double hyp_vol = (n - 2 == 2) ? 4 * M_PI : 1.0; // genus-2 area, else unit
        e.metric.factors = {hyperbolic_factor(n - 2, hyp_vol, "N^" + std::to_string(n - 2)),
                            flat_factor(1, 2 * M_PI, "S^1")};
        e.metric.warps = {expr("1 + t^4 + t^8"),
                          expr("1/(1 + " + std::to_string(b) + "*t^4)")};
        e.s0 = rat(-(n - 2) * (n - 3));
        const Rational B(b), N1(n - 1);
        e.expected = {
            jet_claim(Quantity::H, ClaimKind::VanishingOrder, 7, Provenance::Derived),
            jet_claim(Quantity::H, ClaimKind::LeadingSign, 1, Provenance::Derived),
            jet_claim(Quantity::H, ClaimKind::LeadingCoeff, rat(4) * B * N1,
                      Provenance::Derived),
            jet_claim(Quantity::RicNN, ClaimKind::VanishingOrder, 6, Provenance::Derived),
            jet_claim(Quantity::RicNN, ClaimKind::LeadingCoeff, rat(-44) * B * N1,
                      Provenance::Derived),
            window_claim(Quantity::RicNN, ClaimKind::NonposOnWindow, 0.0,
                         Provenance::Derived),
            jet_claim(Quantity::SAmbientMinusS0, ClaimKind::VanishingOrder, 4,
                      Provenance::Derived),
            jet_claim(Quantity::SAmbientMinusS0, ClaimKind::LeadingCoeff,
                      rat(2) * B * rat(n - 3), Provenance::Derived),
            window_claim(Quantity::SAmbientMinusS0, ClaimKind::NonnegOnWindow, 0.0,
                         Provenance::Derived),
            jet_claim(Quantity::AreaRatioMinus1, ClaimKind::VanishingOrder, 8,
                      Provenance::Derived),
            jet_claim(Quantity::AreaRatioMinus1, ClaimKind::LeadingCoeff,
                      B * N1 / rat(2), Provenance::Derived),
        };
        e.params = {{"n", double(n)}};
    } else if (case_no == 3) {
        // r = sqrt(2/((n-3)(n-4))) is undefined at n = 4, hence n >= 5.
        if (n < 5) throw UnsupportedDimension("case 3 needs n >= 5");
        const int a = n - 3;
        e.name = "case3_n" + std::to_string(n);
        const Rational r_sq = rat(2, (n - 3) * (n - 4));
        const double hyp_vol = (n - 3 == 2) ? 4 * M_PI : 1.0;
        e.metric.factors = {hyperbolic_factor(n - 3, hyp_vol, "N^" + std::to_string(n - 3)),
                            sphere_factor_radius(2, r_sq, "S^2(r)")};
        e.metric.warps = {expr("1 + 2*t^4 + 2*t^8"),
                          expr("1/(1 + " + std::to_string(a) + "*t^4)")};
        e.s0 = 0;
        const Rational A(a);
        e.expected = {
            jet_claim(Quantity::H, ClaimKind::VanishingOrder, 7, Provenance::Derived),
            jet_claim(Quantity::H, ClaimKind::LeadingSign, 1, Provenance::Derived),
            jet_claim(Quantity::H, ClaimKind::LeadingCoeff, rat(8) * A * A,
                      Provenance::Derived),
            jet_claim(Quantity::RicNN, ClaimKind::VanishingOrder, 6, Provenance::Derived),
            jet_claim(Quantity::RicNN, ClaimKind::LeadingCoeff,
                      rat(-8) * A * (rat(11) * A + rat(8)), Provenance::Derived),
            window_claim(Quantity::RicNN, ClaimKind::NonposOnWindow, 0.0,
                         Provenance::Derived),
            jet_claim(Quantity::SAmbientMinusS0, ClaimKind::VanishingOrder, 4,
                      Provenance::Derived,
                      "S_1 + S_2 = 0 at t = 0 since S_2 = 2/r^2 = (n-3)(n-4)"),
            jet_claim(Quantity::SAmbientMinusS0, ClaimKind::LeadingCoeff,
                      rat(2) * A * rat(n - 4) * rat(n - 1), Provenance::Derived),
            window_claim(Quantity::SAmbientMinusS0, ClaimKind::NonnegOnWindow, 0.0,
                         Provenance::Derived),
            jet_claim(Quantity::AreaRatioMinus1, ClaimKind::VanishingOrder, 8,
                      Provenance::Derived),
            jet_claim(Quantity::AreaRatioMinus1, ClaimKind::LeadingCoeff, A * A,
                      Provenance::Derived),
        };
        e.params = {{"n", double(n)}};
    } else {
        throw InvalidParams("case must be 1, 2 or 3");
    }

    e.metric.half_width = window_from_sm_jet(e.metric);
    geometry::validate(e.metric);
    check_s0_consistency(e.metric, e.s0, e.name);
    return e;
}

CatalogEntry build_torus3(int k) {
    if (k < 1) throw InvalidParams("torus exponent k must be >= 1");
    CatalogEntry e;
    e.name = "torus3_k" + std::to_string(k);
    e.metric.factors = {flat_factor(1, 2 * M_PI, "S^1_a"), flat_factor(1, 2 * M_PI, "S^1_b")};
    const std::string f = "1 + t^" + std::to_string(2 * k);
    e.metric.warps = {expr(f), expr("1/(" + f + ")")};
    e.metric.half_width = 0.5;
    e.s0 = 0;
    e.params = {{"k", double(k)}};
    e.expected = {
        jet_claim(Quantity::H, ClaimKind::IdenticallyZero, 0, Provenance::Paper,
                  "foliated by flat, minimal 2-tori"),
        jet_claim(Quantity::RicNN, ClaimKind::VanishingOrder, 4 * k - 2,
                  Provenance::Paper, "Ric(dt,dt) of order t^{4k-2}"),
        jet_claim(Quantity::RicNN, ClaimKind::LeadingSign, -1, Provenance::Derived),
        jet_claim(Quantity::RicNN, ClaimKind::LeadingCoeff, rat(-8) * rat(k) * rat(k),
                  Provenance::Derived),
        window_claim(Quantity::RicNN, ClaimKind::NonposOnWindow, 0.0, Provenance::Derived),
        jet_claim(Quantity::AreaRatioMinus1, ClaimKind::IdenticallyZero, 0,
                  Provenance::Trivial),
    };
    geometry::validate(e.metric);
    check_s0_consistency(e.metric, e.s0, e.name);
    return e;
}

CatalogEntry build_perturbed_torus(int k, int m) {
    if (k < 1 || m <= k) throw InvalidParams("perturbed torus needs m > k >= 1");
    CatalogEntry e;
    e.name = "perturbed_torus_k" + std::to_string(k) + "_m" + std::to_string(m);
    e.metric.factors = {flat_factor(1, 2 * M_PI, "S^1_a"), flat_factor(1, 2 * M_PI, "S^1_b")};
    const std::string f = "1 + t^" + std::to_string(2 * k);
    e.metric.warps = {expr("(" + f + ") + t^" + std::to_string(2 * m)),
                      expr("1/(" + f + ")")};
    e.metric.half_width = 0.5;
    e.s0 = 0;
    e.params = {{"k", double(k)}, {"m", double(m)}};

    const int ric_order = std::min(2 * m - 2, 4 * k - 2);
    Rational ric_coeff;
    if (m > 2 * k) ric_coeff = rat(-8) * rat(k) * rat(k);
    else if (m < 2 * k) ric_coeff = rat(-2) * rat(m) * rat(2 * m - 1);
    else ric_coeff = rat(-(24 * k * k - 4 * k));
    const bool order_stated = (m >= 2 * k);

    e.expected = {
        jet_claim(Quantity::RicNN, ClaimKind::VanishingOrder, ric_order,
                  order_stated ? Provenance::Paper : Provenance::Derived,
                  order_stated ? "Ric still of order t^{4k-2} for m > k large enough" : "",
                  order_stated ? "" : "threshold m >= 2k not stated; computed order recorded"),
        jet_claim(Quantity::RicNN, ClaimKind::LeadingCoeff, ric_coeff, Provenance::Derived),
        jet_claim(Quantity::AreaRatioMinus1, ClaimKind::VanishingOrder, 2 * m,
                  Provenance::Paper, "leaf area increases like t^{2m}"),
        jet_claim(Quantity::AreaRatioMinus1, ClaimKind::LeadingSign, 1, Provenance::Paper,
                  "leaf area increases like t^{2m}"),
        jet_claim(Quantity::AreaRatioMinus1, ClaimKind::LeadingCoeff, 1, Provenance::Derived),
    };
    geometry::validate(e.metric);
    return e;
}

CatalogEntry build_intro_sphere(int k) {
    if (k < 1) throw InvalidParams("intro sphere needs k >= 1");
    CatalogEntry e;
    e.name = "intro_sphere_k" + std::to_string(k);
    e.metric = geometry::from_coefficients(
        {sphere_factor(2, "S^2")}, {expr("1 + t^" + std::to_string(2 * k))}, 0.25);
    e.s0 = 0; // claims compare S^M against zero here
    e.params = {{"k", double(k)}};
    e.expected = {
        window_claim(Quantity::RicNN, ClaimKind::NonposOnWindow, 0.25, Provenance::Paper,
                     "the normal Ricci curvature is non-positive"),
        jet_claim(Quantity::SAmbientMinusS0, ClaimKind::VanishingOrder, 0,
                  Provenance::Derived),
        jet_claim(Quantity::SAmbientMinusS0, ClaimKind::LeadingCoeff,
                  k >= 2 ? 2 : -2, Provenance::Derived),
    };
    if (k >= 2)
        e.expected.push_back(window_claim(Quantity::SAmbientMinusS0,
                                          ClaimKind::NonnegOnWindow, 0.25,
                                          Provenance::Paper,
                                          "positive scalar curvature for a large enough k"));
    geometry::validate(e.metric);
    return e;
}

CatalogEntry build_mm_sphere() {
    CatalogEntry e;
    e.name = "mm_sphere";
    e.metric = geometry::from_coefficients({sphere_factor(2, "S^2")},
                                           {expr("1 + t^4")}, 0.25);
    e.s0 = 2;
    e.expected = {
        jet_claim(Quantity::H, ClaimKind::VanishingOrder, 3, Provenance::Derived),
        jet_claim(Quantity::H, ClaimKind::LeadingCoeff, 4, Provenance::Derived),
        jet_claim(Quantity::RicNN, ClaimKind::VanishingOrder, 2, Provenance::Derived),
        jet_claim(Quantity::RicNN, ClaimKind::LeadingCoeff, -12, Provenance::Derived),
        window_claim(Quantity::RicNN, ClaimKind::NonposOnWindow, 0.25, Provenance::Derived),
        jet_claim(Quantity::SAmbientMinusS0, ClaimKind::VanishingOrder, 2,
                  Provenance::Derived),
        jet_claim(Quantity::SAmbientMinusS0, ClaimKind::LeadingCoeff, -24,
                  Provenance::Paper, "the scalar curvature decreases away from the central leaf"),
        window_claim(Quantity::SAmbientMinusS0, ClaimKind::NonposOnWindow, 0.25,
                     Provenance::Paper, "property (iii) is not satisfied"),
        jet_claim(Quantity::AreaRatioMinus1, ClaimKind::VanishingOrder, 4,
                  Provenance::Paper, "A(Sigma_t) = (1 + t^4) A(Sigma)"),
        jet_claim(Quantity::AreaRatioMinus1, ClaimKind::LeadingCoeff, 1,
                  Provenance::Paper, "A(Sigma_t) = (1 + t^4) A(Sigma)"),
    };
    geometry::validate(e.metric);
    return e;
}

CatalogEntry build_positive_sigma_example(int n, double ell) {
    if (n < 5) throw InvalidParams("positive sigma example needs n >= 5");
    if (!(ell > 0)) throw InvalidParams("circle radius ell must be positive");
    CatalogEntry e;
    std::ostringstream name;
    name << "positive_sigma_n" << n << "_l" << ell;
    e.name = name.str();
    e.metric.factors = {sphere_factor(n - 2, "S^" + std::to_string(n - 2)),
                        flat_factor(1, 2 * M_PI * ell, "S^1(l)")};
    e.metric.warps = {expr("1"), expr("1")};
    e.metric.half_width = 0.5;
    e.s0 = rat((n - 2) * (n - 3));
    e.params = {{"n", double(n)}, {"ell", ell}};
    e.expected = {
        jet_claim(Quantity::SAmbientMinusS0, ClaimKind::IdenticallyZero, 0,
                  Provenance::Paper, "S^M == (n-2)(n-3) = S_0 > 0"),
        jet_claim(Quantity::H, ClaimKind::IdenticallyZero, 0, Provenance::Trivial),
        jet_claim(Quantity::AreaRatioMinus1, ClaimKind::IdenticallyZero, 0,
                  Provenance::Trivial),
    };
    geometry::validate(e.metric);
    check_s0_consistency(e.metric, e.s0, e.name);
    return e;
}

CatalogEntry build_hyperbolic_product(double volume) {
    CatalogEntry e;
    e.name = "hyperbolic_product";
    e.metric.factors = {hyperbolic_factor(3, volume, "N^3")};
    e.metric.warps = {expr("1")};
    e.metric.half_width = 0.5;
    e.s0 = -6;
    e.params = {{"volume", volume}};
    e.expected = {
        jet_claim(Quantity::H, ClaimKind::IdenticallyZero, 0, Provenance::Trivial),
        jet_claim(Quantity::RicNN, ClaimKind::IdenticallyZero, 0, Provenance::Trivial),
        jet_claim(Quantity::SAmbientMinusS0, ClaimKind::IdenticallyZero, 0,
                  Provenance::Trivial),
        jet_claim(Quantity::AreaRatioMinus1, ClaimKind::IdenticallyZero, 0,
                  Provenance::Trivial),
    };
    geometry::validate(e.metric);
    check_s0_consistency(e.metric, e.s0, e.name);
    return e;
}

std::vector<CatalogEntry> default_catalog() {
    return {
        build_case(1, 4),         build_case(2, 4),
        build_case(3, 5),         build_torus3(2),
        build_perturbed_torus(2, 5), build_intro_sphere(2),
        build_mm_sphere(),        build_positive_sigma_example(5, 1.0),
    };
}

std::vector<CatalogEntry> extended_catalog() {
    auto all = default_catalog();
    all.push_back(build_case(1, 5));
    all.push_back(build_case(1, 6));
    all.push_back(build_case(2, 5));
    all.push_back(build_case(3, 6));
    all.push_back(build_torus3(1));
    all.push_back(build_torus3(3));
    all.push_back(build_perturbed_torus(1, 3));
    all.push_back(build_perturbed_torus(2, 3));
    all.push_back(build_intro_sphere(1));
    all.push_back(build_hyperbolic_product(1.0));
    std::sort(all.begin(), all.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) { return a.name < b.name; });
    return all;
}

// ---------------------------------------------------------------------------
// Claim checking
// ---------------------------------------------------------------------------

namespace {

Jet quantity_jet(const CatalogEntry& e, Quantity q, int order) {
    switch (q) {
    case Quantity::H: return geometry::mean_curvature_jet(e.metric, order);
    case Quantity::RicNN: return geometry::normal_ricci_jet(e.metric, order);
    case Quantity::SAmbientMinusS0:
        return geometry::ambient_scalar_jet(e.metric, order) -
               Jet::constant(e.s0, order);
    case Quantity::AreaRatioMinus1:
        return geometry::area_ratio_jet(e.metric, order) - Jet::constant(1, order);
    }
    throw Error("bad quantity");
}

Rational quantity_exact(const CatalogEntry& e, Quantity q, const Rational& t) {
    const auto l = geometry::leaf_exact(e.metric, t);
    switch (q) {
    case Quantity::H: return l.H;
    case Quantity::RicNN: return l.ric_normal;
    case Quantity::SAmbientMinusS0: return l.S_ambient - e.s0;
    case Quantity::AreaRatioMinus1: return l.area_ratio - Rational(1);
    }
    throw Error("bad quantity");
}

double quantity_float(const CatalogEntry& e, Quantity q, double t) {
    const auto l = geometry::leaf_report(e.metric, t);
    switch (q) {
    case Quantity::H: return l.H;
    case Quantity::RicNN: return l.ric_normal;
    case Quantity::SAmbientMinusS0: return l.S_ambient - to_double(e.s0);
    case Quantity::AreaRatioMinus1: return l.area_ratio - 1.0;
    }
    throw Error("bad quantity");
}

std::string describe_jet_head(const Jet& j) {
    const auto v = vanishing_order(j);
    if (v.saturated()) return "zero through order " + std::to_string(j.order());
    std::ostringstream os;
    os << "order " << *v.order << ", leading " << warpcheck::to_string(v.leading);
    return os.str();
}

// Sign checks on the window: exact rational grid when the warps are
// sqrt-free, float grid otherwise.
ClaimResult check_window(const CatalogEntry& e, const ExpectedClaim& c, int grid_points) {
    ClaimResult r{c, false, "", "", ""};
    const bool nonneg = (c.kind == ClaimKind::NonnegOnWindow);
    double window = c.window_max > 0 ? c.window_max : e.sign_window();
    window = std::min(window, e.metric.half_width);
    r.expected_text = std::string(nonneg ? ">= 0" : "<= 0") + " on |t| <= " +
                      std::to_string(window);
    const int half = std::max(grid_points / 2, 1);

    bool exact_ok = true;
    Rational worst(0);
    Rational worst_t(0);
    try {
        const Rational W = rat(static_cast<long>(std::floor(window * 1e6)), 1000000);
        for (int j = -half; j <= half; ++j) {
            const Rational t = W * rat(j, half);
            const Rational v = quantity_exact(e, c.quantity, t);
            const Rational signed_v = nonneg ? v : -v;
            if (signed_v < worst) { worst = signed_v; worst_t = t; }
        }
        r.pass = (sign_of(worst) >= 0);
        std::ostringstream os;
        os << "worst margin " << warpcheck::to_string(worst) << " ("
           << to_double(worst) << ") at t = " << to_double(worst_t);
        r.computed_text = os.str();
        r.method = "exact grid (" + std::to_string(2 * half + 1) + " pts)";
        return r;
    } catch (const NotExpandable&) {
        exact_ok = false;
    }

    if (!exact_ok) {
        double worst_f = 0.0, worst_tf = 0.0;
        for (int j = -half; j <= half; ++j) {
            const double t = window * double(j) / double(half);
            const double v = quantity_float(e, c.quantity, t);
            const double sv = nonneg ? v : -v;
            if (sv < worst_f) { worst_f = sv; worst_tf = t; }
        }
        r.pass = (worst_f >= -1e-12);
        std::ostringstream os;
        os << "worst margin " << worst_f << " at t = " << worst_tf;
        r.computed_text = os.str();
        r.method = "float grid (" + std::to_string(2 * half + 1) + " pts)";
    }
    return r;
}

} // namespace

std::vector<ClaimResult> check_entry(const CatalogEntry& entry, int jet_order,
                                     int grid_points) {
    std::vector<ClaimResult> results;
    results.reserve(entry.expected.size());

    for (const auto& c : entry.expected) {
        if (c.kind == ClaimKind::NonnegOnWindow || c.kind == ClaimKind::NonposOnWindow) {
            results.push_back(check_window(entry, c, grid_points));
            continue;
        }

        ClaimResult r{c, false, "", "", "exact jet"};
        const Jet q = quantity_jet(entry, c.quantity, jet_order);
        const auto v = vanishing_order(q);
        r.computed_text = describe_jet_head(q);

        switch (c.kind) {
        case ClaimKind::VanishingOrder: {
            const long want = c.value.get_num().get_si();
            r.expected_text = "order " + std::to_string(want);
            r.pass = !v.saturated() && *v.order == want;
            break;
        }
        case ClaimKind::LeadingSign: {
            const int want = sign_of(c.value);
            r.expected_text = std::string("leading sign ") + (want > 0 ? "+" : "-");
            r.pass = !v.saturated() && sign_of(v.leading) == want;
            break;
        }
        case ClaimKind::LeadingCoeff: {
            r.expected_text = "leading coefficient " + warpcheck::to_string(c.value);
            r.pass = !v.saturated() && v.leading == c.value;
            break;
        }
        case ClaimKind::IdenticallyZero: {
            r.expected_text = "zero jet through order " + std::to_string(jet_order);
            r.pass = q.is_zero();
            break;
        }
        default: break;
        }
        results.push_back(std::move(r));
    }
    return results;
}

// ---------------------------------------------------------------------------
// Hypotheses (i)-(iv)
// ---------------------------------------------------------------------------

bool einstein_product_check(const std::vector<FactorSpace>& factors) {
    if (factors.empty()) throw InvalidParams("empty factor list");
    const Rational first = Rational(factors[0].dim - 1) * factors[0].sec_curv;
    for (const auto& f : factors)
        if (Rational(f.dim - 1) * f.sec_curv != first) return false;
    return true;
}

namespace {

struct LeafShape {
    // Leaf at t = 0: factor dims, scaled curvatures k_i/f_i(0)^2 and scaled
    // volumes V_i f_i(0)^{d_i}.
    std::vector<int> dims;
    std::vector<Rational> curvs;
    std::vector<double> volumes;
    bool einstein;
};

LeafShape leaf_shape(const WarpedMetric& m) {
    LeafShape s;
    std::vector<FactorSpace> scaled;
    for (size_t i = 0; i < m.factors.size(); ++i) {
        Rational f0_sq;
        try {
            const Jet j = series::expand(m.warps[i], 2);
            f0_sq = j.coeff(0) * j.coeff(0);
        } catch (const NotExpandable&) {
            const double f0 = series::eval(m.warps[i], 0.0);
            f0_sq = rat(static_cast<long>(std::llround(f0 * f0 * 1e9)), 1000000000);
        }
        const Rational k_hat = m.factors[i].sec_curv / f0_sq;
        s.dims.push_back(m.factors[i].dim);
        s.curvs.push_back(k_hat);
        s.volumes.push_back(m.factors[i].volume *
                            std::pow(to_double(f0_sq), m.factors[i].dim / 2.0));
        scaled.emplace_back(m.factors[i].dim, k_hat, 1.0, m.factors[i].label);
    }
    s.einstein = einstein_product_check(scaled);
    return s;
}

} // namespace

SigmaFacts sigma_facts(const WarpedMetric& m) {
    const LeafShape s = leaf_shape(m);
    SigmaFacts out;
    out.einstein = s.einstein;

    const bool all_flat = std::all_of(s.curvs.begin(), s.curvs.end(),
                                      [](const Rational& k) { return sign_of(k) == 0; });
    if (all_flat) {
        out.sigma_value = 0.0;
        out.sign = Sign::Zero;
        out.attains = TriState::Holds;
        out.source = "flat leaf: sigma = 0, attained by the flat metric";
        return out;
    }

    if (s.dims.size() == 1) {
        const int d = s.dims[0];
        const Rational k = s.curvs[0];
        if (sign_of(k) > 0) {
            out.sigma_value = d * (d - 1) *
                              std::pow(geometry::unit_sphere_volume(d), 2.0 / d);
            out.sign = Sign::Positive;
            out.attains = TriState::Holds;
            out.source = "round sphere: sigma(S^d) = d(d-1) Vol(S^d(1))^{2/d}";
            return out;
        }
        // constant negative curvature
        if (d == 2) {
            const double total = to_double(s.curvs[0]) * 2.0 * s.volumes[0];
            out.sigma_value = total; // 4 pi chi by Gauss-Bonnet
            out.sign = Sign::Negative;
            out.attains = TriState::Holds;
            out.source = "closed surface: sigma = 4 pi chi, attained at constant curvature";
            return out;
        }
        if (d == 3) {
            const double vol_hyp =
                s.volumes[0] * std::pow(std::abs(to_double(k)), 1.5);
            out.sigma_value = -6.0 * std::pow(vol_hyp, 2.0 / 3.0);
            out.sign = Sign::Negative;
            out.attains = TriState::Holds;
            out.source = "closed hyperbolic 3-manifold: sigma = -6 Vol^{2/3}";
            return out;
        }
        out.sign = Sign::Unknown;
        out.attains = TriState::Unknown;
        out.source = "sigma of a hyperbolic " + std::to_string(d) +
                     "-manifold is not cataloged";
        return out;
    }

    // Products. Sphere x circle inherits the sphere-one-dimension-up value.
    if (s.dims.size() == 2) {
        const bool sphere_circle =
            (s.dims[1] == 1 && sign_of(s.curvs[0]) > 0 && s.dims[0] >= 2) ||
            (s.dims[0] == 1 && sign_of(s.curvs[1]) > 0 && s.dims[1] >= 2);
        if (sphere_circle) {
            const int d = std::max(s.dims[0], s.dims[1]);
            out.sigma_value =
                (d + 1) * d * std::pow(geometry::unit_sphere_volume(d + 1), 2.0 / (d + 1));
            out.sign = Sign::Positive;
            out.attains = s.einstein ? TriState::Unknown : TriState::Fails;
            out.source = "sigma(S^d x S^1) = sigma(S^{d+1}); the product metric is not Einstein";
            return out;
        }
        const bool hyp2_circle =
            (s.dims[0] == 2 && sign_of(s.curvs[0]) < 0 && s.dims[1] == 1) ||
            (s.dims[1] == 2 && sign_of(s.curvs[1]) < 0 && s.dims[0] == 1);
        if (hyp2_circle) {
            out.sign = Sign::Negative;
            out.attains = TriState::Fails;
            out.source = "hyperbolic surface times circle: sigma < 0, value not cataloged; "
                         "product metric is not Einstein";
            return out;
        }
    }

    // Positive scalar curvature certifies a positive sigma constant.
    Rational total_scal(0);
    for (size_t i = 0; i < s.dims.size(); ++i)
        total_scal += Rational(s.dims[i]) * Rational(s.dims[i] - 1) * s.curvs[i];
    if (sign_of(total_scal) > 0) out.sign = Sign::Positive;
    out.attains = s.einstein ? TriState::Unknown : TriState::Fails;
    out.source = s.einstein ? "sigma not cataloged"
                            : "product leaf is not Einstein, so it cannot attain sigma";
    return out;
}

HypothesisReport hypothesis_check(const CatalogEntry& entry, int grid_points) {
    HypothesisReport rep{};
    const auto& m = entry.metric;

    // (i) totally geodesic at t = 0: all f_i'(0) = 0, exactly.
    bool tg = true;
    std::ostringstream ev1;
    const auto kappas = geometry::weingarten_jets(m, 2);
    for (const auto& kc : kappas) {
        if (kc.kappa.coeff(0) != 0) tg = false;
        ev1 << kc.label << ": kappa(0) = " << warpcheck::to_string(kc.kappa.coeff(0)) << "; ";
    }
    rep.i = tg ? TriState::Holds : TriState::Fails;
    rep.evidence_i = ev1.str();

    // (ii) Ric(dt,dt)(0) = 0: exact jet constant term plus the float value.
    const Jet ric = geometry::normal_ricci_jet(m, 2);
    const double ric0 = geometry::normal_ricci(m, 0.0);
    rep.ii = (ric.coeff(0) == 0 && std::abs(ric0) <= 1e-12) ? TriState::Holds
                                                            : TriState::Fails;
    {
        std::ostringstream os;
        os << "Ric(dt,dt)(0) = " << warpcheck::to_string(ric.coeff(0))
           << " (float " << ric0 << ")";
        rep.evidence_ii = os.str();
    }

    // (iii) S^M attains its window infimum on the central leaf.
    const double window = entry.sign_window();
    const int half = std::max(grid_points / 2, 1);
    double inf = geometry::ambient_scalar(m, 0.0);
    rep.sm_at_zero = inf;
    for (int j = -half; j <= half; ++j) {
        const double t = window * double(j) / double(half);
        inf = std::min(inf, geometry::ambient_scalar(m, t));
    }
    rep.sm_grid_inf = inf;
    const double tol = std::max(1e-12, 1e-10 * std::abs(rep.sm_at_zero));
    rep.iii = (inf >= rep.sm_at_zero - tol) ? TriState::Holds : TriState::Fails;
    {
        std::ostringstream os;
        os << "S^M(0) = " << rep.sm_at_zero << ", grid inf = " << rep.sm_grid_inf
           << " on |t| <= " << window;
        rep.evidence_iii = os.str();
    }

    // (iv) the induced leaf metric attains the sigma constant.
    const SigmaFacts facts = sigma_facts(m);
    rep.iv = facts.attains;
    rep.evidence_iv = facts.source;
    return rep;
}

double equality_gap(const WarpedMetric& m, double S0) {
    if (S0 > 0) throw InvalidParams("equality gap is defined for S0 <= 0");
    const SigmaFacts facts = sigma_facts(m);
    if (!facts.sigma_value)
        throw SigmaUnknown("sigma constant of this leaf is not cataloged");
    const double A = geometry::leaf_area(m, 0.0);
    const int leaf_dim = m.leaf_dim();
    return *facts.sigma_value - S0 * std::pow(A, 2.0 / leaf_dim);
}

} // namespace warpcheck::cat
