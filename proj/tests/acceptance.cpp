// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] (optional) is the CLI binary for the end-to-end check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "warpcheck/catalog.hpp"
#include "warpcheck/gronwall.hpp"
#include "warpcheck/varcheck.hpp"
#include "warpcheck/yamabe.hpp"

using namespace warpcheck;
using cat::CatalogEntry;
using geometry::WarpedMetric;
using series::Jet;
using series::ScalarExpr;

namespace {

int g_failures = 0;
std::ostringstream g_detail;

void report(int criterion, const std::string& what, bool pass) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str());
    if (!g_detail.str().empty()) {
        std::printf("%s", g_detail.str().c_str());
        g_detail.str("");
    }
    if (!pass) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

ScalarExpr random_poly_warp(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> c(-2, 2);
    std::uniform_int_distribution<long> c0(1, 3);
    std::uniform_int_distribution<int> deg(1, 5);
    ScalarExpr e = ScalarExpr::constant(rat(c0(rng), 1 + (c0(rng) % 2)));
    const int d = deg(rng);
    for (int i = 1; i <= d; ++i)
        e = e + ScalarExpr::constant(rat(c(rng), 2)) * pow(ScalarExpr::t(), i);
    return e;
}

WarpedMetric random_metric(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_factors(1, 3);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_int_distribution<long> curv_num(-2, 2);
    WarpedMetric m;
    const int nf = n_factors(rng);
    for (int i = 0; i < nf; ++i) {
        m.factors.emplace_back(dim(rng), rat(curv_num(rng), 2), 1.0,
                               "F" + std::to_string(i));
        m.warps.push_back(random_poly_warp(rng));
    }
    m.half_width = 0.1;
    return m;
}

// Exact sign scan of a quantity over the symmetric rational grid.
enum class Q { H, Ric, SmMinusS0, AreaMinus1 };

Rational exact_quantity(const CatalogEntry& e, Q q, const Rational& t) {
    const auto l = geometry::leaf_exact(e.metric, t);
    switch (q) {
    case Q::H: return l.H;
    case Q::Ric: return l.ric_normal;
    case Q::SmMinusS0: return l.S_ambient - e.s0;
    case Q::AreaMinus1: return l.area_ratio - Rational(1);
    }
    return Rational(0);
}

// --------------------------------------------------------------------------

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;

    auto entries = cat::default_catalog();
    entries.push_back(cat::build_hyperbolic_product(1.0));
    for (const auto& e : entries) {
        ok = ok && geometry::gauss_residual(e.metric, 16).is_zero();
        ok = ok && geometry::evolution_residual(e.metric, 16).is_zero();
        ok = ok && geometry::first_variation_residual(e.metric, 16).is_zero();
    }

    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 500; ++i) {
        const WarpedMetric m = random_metric(rng);
        ok = ok && geometry::gauss_residual(m, 16).is_zero();
        ok = ok && geometry::evolution_residual(m, 16).is_zero();
        ok = ok && geometry::first_variation_residual(m, 16).is_zero();
    }

    const double secs = elapsed_s(start);
    ok = ok && secs < 10.0;
    g_detail << "        8 catalog constructions + product model + 500 random "
                "metrics, exact zero jets through order 16, "
             << secs << " s\n";
    report(1, "Gauss / evolution / first-variation residuals are the zero jet",
           ok);
}

void criterion_2() {
    bool ok = true;
    for (int n : {4, 5, 6}) {
        const CatalogEntry e = cat::build_case(1, n);
        const Rational A(n - 3);

        const Jet sm = geometry::ambient_scalar_jet(e.metric) - Jet::constant(e.s0, 16);
        const auto vsm = vanishing_order(sm);
        ok = ok && !vsm.saturated() && *vsm.order == 4 && vsm.leading == rat(4) * A;

        const auto vric = vanishing_order(geometry::normal_ricci_jet(e.metric));
        ok = ok && !vric.saturated() && *vric.order == 6 && sign_of(vric.leading) < 0;
        if (n == 4) ok = ok && vric.leading == -152;

        const Jet area = geometry::area_ratio_jet(e.metric) - Jet::constant(1, 16);
        const auto va = vanishing_order(area);
        ok = ok && !va.saturated() && *va.order == 8 && va.leading == A * A;

        const auto vh = vanishing_order(geometry::mean_curvature_jet(e.metric));
        ok = ok && !vh.saturated() && *vh.order == 7 && sign_of(vh.leading) > 0;
        g_detail << "        n=" << n << ": H leading computed "
                 << to_string(vh.leading) << " (stated 16(n-3)^2 = "
                 << 16 * (n - 3) * (n - 3)
                 << "; order and sign asserted, coefficient logged)\n";
    }
    report(2, "case 1 (n = 4, 5, 6) expansion orders and coefficients", ok);
}

void criterion_3() {
    bool ok = true;
    const std::vector<std::pair<int, int>> cases = {{2, 4}, {2, 5}, {3, 5}, {3, 6}};
    for (const auto& [c, n] : cases) {
        const CatalogEntry e = cat::build_case(c, n);
        const double window = e.sign_window();
        const Rational W = rat(static_cast<long>(std::floor(window * 1e6)), 1000000);

        // totally geodesic central leaf, exactly
        for (const auto& kc : geometry::weingarten_jets(e.metric, 2))
            ok = ok && kc.kappa.coeff(0) == 0;

        // Ric: order exactly 6, nonpositive near 0
        const auto vric = vanishing_order(geometry::normal_ricci_jet(e.metric));
        ok = ok && !vric.saturated() && *vric.order == 6 && sign_of(vric.leading) < 0;

        // S^M - S0 = 4 (positive) t^4 + O(t^6), exact coefficients
        const Jet sm = geometry::ambient_scalar_jet(e.metric) - Jet::constant(e.s0, 16);
        const auto vsm = vanishing_order(sm);
        const Rational expect4 =
            (c == 2) ? Rational(rat(2) * rat(n - 2) * rat(n - 3))
                     : Rational(rat(2) * rat(n - 3) * rat(n - 4) * rat(n - 1));
        ok = ok && !vsm.saturated() && *vsm.order == 4 && vsm.leading == expect4 &&
             sign_of(vsm.leading) > 0;

        // exact grid scans on |t| <= min(eps, 0.1)
        const int half = 100;
        bool grid_ok = true;
        for (int j = -half; j <= half; ++j) {
            const Rational t = W * rat(j, half);
            if (sign_of(exact_quantity(e, Q::SmMinusS0, t)) < 0) grid_ok = false;
            if (sign_of(exact_quantity(e, Q::Ric, t)) > 0) grid_ok = false;
            if (j > 0 && sign_of(exact_quantity(e, Q::H, t)) <= 0) grid_ok = false;
        }
        // area ratio strictly increasing in |t|
        for (int j = 0; j < half; ++j) {
            const Rational a0 = exact_quantity(e, Q::AreaMinus1, W * rat(j, half));
            const Rational a1 = exact_quantity(e, Q::AreaMinus1, W * rat(j + 1, half));
            if (!(a1 > a0)) grid_ok = false;
            const Rational b0 = exact_quantity(e, Q::AreaMinus1, W * rat(-j, half));
            const Rational b1 = exact_quantity(e, Q::AreaMinus1, W * rat(-(j + 1), half));
            if (!(b1 > b0)) grid_ok = false;
        }
        ok = ok && grid_ok;
        g_detail << "        case " << c << ", n=" << n
                 << ": exact grid on |t| <= " << window
                 << (window < 0.1 ? " (eps below 0.1, see entry window)" : "")
                 << (grid_ok ? " clean\n" : " VIOLATED\n");
    }
    report(3, "cases 2 (n = 4, 5) and 3 (n = 5, 6) sign and monotonicity checks",
           ok);
}

void criterion_4() {
    bool ok = true;
    for (int k : {1, 2, 3}) {
        const CatalogEntry e = cat::build_torus3(k);
        ok = ok && geometry::mean_curvature_jet(e.metric).is_zero();
        const auto v = vanishing_order(geometry::normal_ricci_jet(e.metric));
        ok = ok && !v.saturated() && *v.order == 4 * k - 2;
    }
    const CatalogEntry p = cat::build_perturbed_torus(2, 5);
    const auto vric = vanishing_order(geometry::normal_ricci_jet(p.metric));
    ok = ok && !vric.saturated() && *vric.order == 6;
    const Jet area = geometry::area_ratio_jet(p.metric) - Jet::constant(1, 16);
    const auto va = vanishing_order(area);
    ok = ok && !va.saturated() && *va.order == 10;
    report(4, "torus family: H == 0, Ric order 4k-2; perturbed torus orders", ok);
}

void criterion_5() {
    using cat::TriState;
    const auto mm = cat::hypothesis_check(cat::build_mm_sphere());
    const bool mm_ok = mm.i == TriState::Holds && mm.ii == TriState::Holds &&
                       mm.iii == TriState::Fails && mm.iv == TriState::Holds;

    const auto c24 = cat::hypothesis_check(cat::build_case(2, 4));
    const bool c24_ok = c24.i == TriState::Holds && c24.ii == TriState::Holds &&
                        c24.iii == TriState::Holds && c24.iv == TriState::Fails;

    const auto hyp = cat::hypothesis_check(cat::build_hyperbolic_product(1.0));
    const bool hyp_ok = hyp.i == TriState::Holds && hyp.ii == TriState::Holds &&
                        hyp.iii == TriState::Holds && hyp.iv == TriState::Holds;

    g_detail << "        mm sphere fails exactly (iii); case 2 (n=4) fails "
                "exactly (iv); hyperbolic product passes (i)-(iv)\n";
    report(5, "hypothesis checker binary outcomes", mm_ok && c24_ok && hyp_ok);
}

void criterion_6() {
    bool ok = true;

    const auto eq = varcheck::chain_evaluate(varcheck::equality_scenario(4, -2.0, 7));
    for (const auto& st : eq.steps) ok = ok && std::abs(st.slack) < 1e-12;

    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> m_dist(3, 6);
    std::uniform_int_distribution<int> n_dist(3, 40);
    std::uniform_real_distribution<double> mu(0.1, 2.0), fval(0.2, 2.0),
        grad(0.0, 2.0), b2(0.0, 1.5), sval(-3.0, 3.0), eta(0.0, 1.0);
    for (int i = 0; i < 1000 && ok; ++i) {
        varcheck::Scenario s;
        s.leaf_dim = m_dist(rng);
        double min_sm = 0.0;
        const int ns = n_dist(rng);
        for (int j = 0; j < ns; ++j) {
            varcheck::Sample x;
            x.mu = mu(rng);
            x.f = fval(rng);
            x.gradf2 = grad(rng);
            x.B2 = b2(rng);
            x.S = sval(rng);
            x.RicNN = -x.B2 - eta(rng);
            x.S_M = x.S + x.B2 + 2 * x.RicNN;
            min_sm = std::min(min_sm, x.S_M);
            s.samples.push_back(x);
        }
        s.S0 = std::min(0.0, min_sm - eta(rng));
        const auto r = varcheck::chain_evaluate(s);
        for (size_t j = 1; j < r.steps.size(); ++j) {
            const double scale = std::max(
                {std::abs(r.steps[j].value), std::abs(r.steps[j - 1].value), 1.0});
            if (r.steps[j].value - r.steps[j - 1].value < -1e-12 * scale) ok = false;
            if (r.steps[j].slack < -1e-12 * scale) ok = false;
        }
    }

    std::uniform_real_distribution<double> wd(0.1, 2.0), fd(0.1, 3.0);
    for (int i = 0; i < 500 && ok; ++i) {
        std::vector<double> ws(12), fs(12);
        for (auto& x : ws) x = wd(rng);
        for (auto& x : fs) x = fd(rng);
        if (varcheck::holder_slack(ws, fs, 3 + (i % 4)) < -1e-12) ok = false;
    }
    const std::vector<double> w2 = {1.0, 1.0}, f2 = {1.0, 2.0};
    ok = ok &&
         std::abs(varcheck::holder_slack(w2, f2, 4) - (std::sqrt(34.0) - 5.0)) < 1e-12;
    const std::vector<double> fc = {0.8, 0.8};
    ok = ok && std::abs(varcheck::holder_slack(w2, fc, 4)) < 1e-13;

    report(6, "variational chain: equality slacks, 1000 random monotone, Holder",
           ok);
}

void criterion_7() {
    bool ok = true;
    const double V = 2.2;
    ok = ok && yamabe::quotient_constant(-6.0, V, 3) == -6.0 * std::pow(V, 2.0 / 3.0);
    const double vol_s3 = 2.0 * M_PI * M_PI;
    ok = ok &&
         yamabe::quotient_constant(6.0, vol_s3, 3) == 6.0 * std::pow(vol_s3, 2.0 / 3.0);

    double worst_q = 0.0, worst_secs = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto start = std::chrono::steady_clock::now();
        const auto field = yamabe::random_positive_field(16, 0.0, 1.0, seed);
        const auto res = yamabe::minimize_quotient(field, 3);
        const double secs = elapsed_s(start);
        worst_q = std::max(worst_q, res.q_est);
        worst_secs = std::max(worst_secs, secs);
        ok = ok && res.q_est >= 0.0 && res.q_est <= 1e-6 && secs < 60.0;
    }
    g_detail << "        flat 16^3 torus, 10 random starts: worst Q_est = "
             << worst_q << ", worst time " << worst_secs << " s\n";

    std::mt19937_64 rng(5);
    for (int i = 0; i < 20 && ok; ++i) {
        auto f = yamabe::random_positive_field(8, -3.0, 1.0, rng());
        const double q = yamabe::quotient_of_field(f, 3);
        for (auto& v : f.values) v *= 4.2;
        if (std::abs(yamabe::quotient_of_field(f, 3) - q) >
            1e-12 * std::max(1.0, std::abs(q)))
            ok = false;
    }
    report(7, "Yamabe quotient: sigma values, flat-torus minimization, homogeneity",
           ok);
}

void criterion_8() {
    bool ok = true;
    auto cons = [](double eps, int n_int, double S0, double (*h)(double)) {
        gronwall::GronwallData d;
        d.grid = gronwall::uniform_grid(eps, n_int);
        d.S0 = S0;
        d.n = 4;
        d.C1 = 1.0;
        d.C2 = 1.0;
        for (double t : d.grid) {
            d.H.push_back(h(t));
            d.phi.push_back(1.0);
            d.xi.push_back(1.0);
        }
        d.H[0] = 0.0;
        return d;
    };

    const auto zero = cons(0.5, 100, -2.0, [](double) { return 0.0; });
    ok = ok && gronwall::conclude_nonpositive(zero, gronwall::inequality_residuals(zero),
                                              1e-8)
                   .pass;
    const auto sq = cons(0.9, 200, -2.0, [](double t) { return -t * t; });
    ok = ok &&
         gronwall::conclude_nonpositive(sq, gronwall::inequality_residuals(sq), 1e-8)
             .pass;

    const auto lin = cons(0.5, 100, -2.0, [](double t) { return t; });
    const auto rl = gronwall::inequality_residuals(lin);
    ok = ok && rl.residuals[0] > 1e-8; // violated at the very first grid point

    // 200 random positive-bump trials at eps = 0.5 C3^{-1/2}
    gronwall::GronwallData templ = cons(0.5, 200, -2.0, [](double) { return 0.0; });
    const double eps = 0.5 / std::sqrt(gronwall::c3(templ));
    templ = cons(eps, 200, -2.0, [](double) { return 0.0; });
    const auto rep = gronwall::counterexample_search(templ, 200, 31337);
    ok = ok && rep.violations == rep.trials && rep.passing_seeds.empty();
    g_detail << "        rejection test at eps = " << eps << ": " << rep.violations
             << "/" << rep.trials << " violations\n";

    // refinement drift on smooth data
    auto smooth_data = [](int n_int) {
        gronwall::GronwallData d;
        d.grid = gronwall::uniform_grid(0.8, n_int);
        d.S0 = -2.0;
        d.n = 4;
        d.C1 = 1.0;
        d.C2 = 1.0;
        for (double t : d.grid) {
            d.H.push_back(-t * t + 0.5 * t * t * t);
            d.phi.push_back(1.0 + t);
            d.xi.push_back(1.0 / (1.0 + t));
        }
        d.H[0] = 0.0;
        return d;
    };
    const auto r1 = gronwall::inequality_residuals(smooth_data(100));
    const auto r2 = gronwall::inequality_residuals(smooth_data(200));
    const auto r4 = gronwall::inequality_residuals(smooth_data(400));
    double d12 = 0.0, d24 = 0.0;
    for (size_t j = 0; j + 1 < r1.residuals.size(); ++j)
        d12 = std::max(d12, std::abs(r2.residuals[2 * j] - r1.residuals[j]));
    for (size_t j = 0; j + 1 < r2.residuals.size(); ++j)
        d24 = std::max(d24, std::abs(r4.residuals[2 * j] - r2.residuals[j]));
    ok = ok && (d24 / d12 <= 0.75);

    report(8, "Gronwall checker: verdicts, 200-trial rejection, refinement drift",
           ok);
}

void criterion_9() {
    const double V = 1.7;
    const auto hyp = cat::build_hyperbolic_product(V).metric;
    const double gap_eq = cat::equality_gap(hyp, -6.0);
    bool ok = std::abs(gap_eq) <= 1e-12 * (1.0 + 6.0 * std::pow(V, 2.0 / 3.0));

    WarpedMetric scaled = hyp;
    scaled.warps = {ScalarExpr::parse("1.2599210498948732")}; // area doubles
    const double gap2 = cat::equality_gap(scaled, -6.0);
    const double expect = -6 * std::pow(V, 2.0 / 3.0) + 6 * std::pow(2 * V, 2.0 / 3.0);
    ok = ok && gap2 > 0.0 && std::abs(gap2 - expect) < 1e-8 * expect;
    g_detail << "        gap(A = V) = " << gap_eq << ", gap(A = 2V) = " << gap2
             << "\n";
    report(9, "equality-case bookkeeping for the hyperbolic product", ok);
}

void criterion_10(const char* binary) {
    if (binary == nullptr) {
        report(10, "end-to-end verify-paper (skipped: no binary path given)", false);
        return;
    }
    const auto start = std::chrono::steady_clock::now();
    const std::string out_path = "acceptance_verify_paper.json";
    const std::string cmd =
        std::string(binary) + " verify-paper --format json > " + out_path;
    const int status = std::system(cmd.c_str());
    const double secs = elapsed_s(start);
    bool ok = (status != -1) && WIFEXITED(status) && WEXITSTATUS(status) == 0;

    size_t n_claims = 0;
    bool tags_ok = true;
    if (ok) {
        std::ifstream in(out_path);
        nlohmann::json doc;
        in >> doc;
        ok = ok && doc["all_pass"].get<bool>();
        n_claims = doc["claims"].size();
        for (const auto& c : doc["claims"]) {
            const std::string tag = c["provenance"].get<std::string>();
            if (tag != "PAPER" && tag != "DERIVED" && tag != "TRIVIAL") tags_ok = false;
        }
        ok = ok && tags_ok && n_claims >= 25;
    }
    ok = ok && secs < 180.0;
    g_detail << "        exit 0, " << n_claims << " claims, all tagged, " << secs
             << " s\n";
    report(10, "end-to-end `verify-paper` run", ok);
}

} // namespace

int main(int argc, char** argv) {
    const auto start = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(argc > 1 ? argv[1] : nullptr);

    std::printf("acceptance total: %.1f s, %d failure(s)\n", elapsed_s(start),
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
