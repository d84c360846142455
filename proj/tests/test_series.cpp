#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "testutil.hpp"
#include "warpcheck/scalar_expr.hpp"

using namespace warpcheck;
using namespace warpcheck::series;
using testutil::close;
using testutil::random_jet;
using testutil::random_unit_jet;

namespace {

Jet jet_from(std::initializer_list<std::pair<int, Rational>> terms, int order = 16) {
    Jet j(order);
    for (const auto& [k, c] : terms) j.coeff_mut(k) = c;
    return j;
}

} // namespace

TEST_CASE("jet multiplication") {
    const Jet one_plus_t = jet_from({{0, 1}, {1, 1}});
    const Jet one_minus_t = jet_from({{0, 1}, {1, -1}});
    CHECK(one_plus_t * one_minus_t == jet_from({{0, 1}, {2, -1}}));

    // inverse round trip: (1+t^4) * (1+t^4)^{-1} == 1
    const Jet q = jet_from({{0, 1}, {4, 1}});
    CHECK(q * (Jet::constant(1, 16) / q) == Jet::constant(1, 16));

    // u^2 w for the first construction at n = 4: 1 + t^8 - 2 t^12 + ...
    const Jet u = expand(ScalarExpr::parse("1/(1 + t^4)"), 16);
    const Jet w = expand(ScalarExpr::parse("1 + 2*t^4 + 2*t^8"), 16);
    const Jet uuw = u * u * w;
    CHECK(uuw.coeff(0) == 1);
    CHECK(uuw.coeff(4) == 0);
    CHECK(uuw.coeff(8) == 1);
    CHECK(uuw.coeff(12) == -2);
}

TEST_CASE("jet division") {
    const Jet geo = Jet::constant(1, 16) / jet_from({{0, 1}, {4, 1}});
    CHECK(geo == jet_from({{0, 1}, {4, -1}, {8, 1}, {12, -1}, {16, 1}}));

    const Jet num = jet_from({{3, 8}, {7, 16}});
    const Jet den = jet_from({{0, 1}, {4, 2}, {8, 2}});
    const Jet quot = num / den;
    CHECK(quot.coeff(3) == 8);
    CHECK(quot.coeff(7) == 0);
    CHECK(quot.coeff(11) == -16);
    // long division cross-checked by multiplying back
    CHECK(quot * den == num);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const Jet a = random_unit_jet(rng, 12);
        CHECK(a / a == Jet::constant(1, 12));
    }

    CHECK_THROWS_AS(num / jet_from({{1, 1}}), DivisionByZeroConstantTerm);
}

TEST_CASE("jet square root") {
    CHECK(sqrt(Jet::constant(1, 16)) == Jet::constant(1, 16));

    const Jet s = sqrt(jet_from({{0, 1}, {2, 1}}));
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(2) == rat(1, 2));
    CHECK(s.coeff(4) == rat(-1, 8));
    CHECK(s.coeff(6) == rat(1, 16));

    const Jet a = jet_from({{0, 1}, {4, 1}});
    const Jet r = sqrt(a);
    CHECK(r * r == a);

    CHECK_THROWS_AS(sqrt(jet_from({{0, -1}})), NonPositiveConstantTerm);
    CHECK_THROWS_AS(sqrt(jet_from({{1, 1}})), NonPositiveConstantTerm);
    // positive but not a rational square
    CHECK_THROWS_AS(sqrt(jet_from({{0, 2}})), DomainError);
}

TEST_CASE("jet derivative") {
    CHECK(derivative(jet_from({{0, 1}, {4, 2}, {8, 2}})) ==
          jet_from({{3, 8}, {7, 16}}, 15));
    CHECK(derivative(Jet::constant(5, 16)).is_zero());

    const Jet ds = derivative(sqrt(jet_from({{0, 1}, {2, 1}})));
    CHECK(ds.coeff(1) == 1);
    CHECK(ds.coeff(3) == rat(-1, 2));
    CHECK(ds.coeff(5) == rat(3, 8));
}

TEST_CASE("vanishing order") {
    CHECK(vanishing_order(Jet(16)).saturated());

    const auto v1 = vanishing_order(jet_from({{7, 8}, {11, -24}}));
    CHECK(*v1.order == 7);
    CHECK(v1.leading == 8);

    const auto v2 = vanishing_order(jet_from({{6, -152}, {10, 328}}));
    CHECK(*v2.order == 6);
    CHECK(v2.leading == -152);
}

TEST_CASE("expression evaluation") {
    CHECK(eval(ScalarExpr::parse("1/(1 + t^4)"), 0.0) == 1.0);
    CHECK(eval(ScalarExpr::parse("1 + 2*t^4 + 2*t^8"), 1.0) == 5.0);
    CHECK(close(eval(ScalarExpr::parse("sqrt(1 + t^2)"), 1.0), std::sqrt(2.0), 1e-15));

    CHECK_THROWS_AS(eval(ScalarExpr::parse("1/(1 - t^2)"), 1.0), DomainError);
    CHECK_THROWS_AS(eval(ScalarExpr::parse("sqrt(t - 1)"), 0.0), DomainError);

    // exact evaluation at rational points (sqrt-free)
    CHECK(eval_exact(ScalarExpr::parse("1 + 2*t^4 + 2*t^8"), Rational(1)) == 5);
    CHECK_THROWS_AS(eval_exact(ScalarExpr::parse("sqrt(1 + t^2)"), Rational(1)),
                    NotExpandable);
}

TEST_CASE("expression expansion") {
    const Jet inv = expand(ScalarExpr::parse("1/(1 + t^4)"), 16);
    CHECK(inv == jet_from({{0, 1}, {4, -1}, {8, 1}, {12, -1}, {16, 1}}));

    const Jet root = expand(ScalarExpr::parse("sqrt(1 + t^4)"), 12);
    CHECK(root.coeff(0) == 1);
    CHECK(root.coeff(4) == rat(1, 2));
    CHECK(root.coeff(8) == rat(-1, 8));

    CHECK_THROWS_AS(expand(ScalarExpr::parse("1/t"), 8), NotExpandable);
    CHECK_THROWS_AS(expand(ScalarExpr::parse("sqrt(t)"), 8), NotExpandable);

    // second derivative of (1 + (n-3) t^4)^{-1} for n = 5 matches the closed
    // form (-12(n-3)t^2 + 20(n-3)^2 t^6)(1 + (n-3)t^4)^{-3}
    for (int n : {4, 5, 7}) {
        const int a = n - 3;
        const std::string A = std::to_string(a);
        const Jet u = expand(ScalarExpr::parse("1/(1 + " + A + "*t^4)"), 18);
        const Jet udd = derivative(derivative(u));
        const Jet closed = expand(
            ScalarExpr::parse("(" + std::to_string(-12 * a) + "*t^2 + " +
                              std::to_string(20 * a * a) + "*t^6)/(1 + " + A +
                              "*t^4)^3"),
            16);
        CHECK(udd == closed);
    }
}

TEST_CASE("expression parsing and printing round trip") {
    for (const char* text : {
             "1 + 2*t^4 + 2*t^8",
             "1/(1 + 3*t^4)",
             "sqrt(1 + t^2)",
             "(1 + t^2)*(1 - t^2)/(2 + t^4)",
             "-t^3 + 0.25*t",
             "t^-2",
         }) {
        const ScalarExpr e = ScalarExpr::parse(text);
        const ScalarExpr reparsed = ScalarExpr::parse(e.str());
        for (double t : {0.2, 0.5, 0.9})
            CHECK(close(eval(e, t), eval(reparsed, t), 1e-14));
    }
    CHECK_THROWS_AS(ScalarExpr::parse("1 +"), ParseError);
    CHECK_THROWS_AS(ScalarExpr::parse("(1 + t"), ParseError);
    CHECK_THROWS_AS(ScalarExpr::parse("t^x"), ParseError);
    CHECK_THROWS_AS(ScalarExpr::parse("u + 1"), ParseError);
}

TEST_CASE("ring axioms on random rational jets") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        const Jet a = random_jet(rng, 10);
        const Jet b = random_jet(rng, 10);
        const Jet c = random_jet(rng, 10);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("division and square root round trips") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const Jet a = random_jet(rng, 12);
        const Jet b = random_unit_jet(rng, 12);
        CHECK((a / b) * b == a);

        Jet s = random_jet(rng, 12);
        s.coeff_mut(0) = rat(1 + static_cast<long>(i % 5));
        // build a guaranteed perfect square and take its root
        const Jet sq = s * s;
        CHECK(sqrt(sq) * sqrt(sq) == sq);
    }
}

TEST_CASE("Leibniz rule") {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 200; ++i) {
        const Jet a = random_jet(rng, 12);
        const Jet b = random_jet(rng, 12);
        const Jet lhs = derivative(a * b);
        const Jet rhs = derivative(a) * truncated(b, 11) + truncated(a, 11) * derivative(b);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("float evaluation agrees with jet expansion at the right order") {
    // |e(t) - jet_K(e)(t)| ~ C t^{K+1}: halving t must scale the error by
    // about 2^{K+1}; demand >= 2^K / 4 to leave room for higher terms.
    std::mt19937_64 rng(45);
    std::uniform_int_distribution<int> coeff(-3, 3);
    const int K = 10;
    int validated = 0;
    for (int i = 0; i < 400 && validated < 60; ++i) {
        // p(t)/(1 + t^2 q(t)^2 / 4) + sqrt(1 + t^2 r(t)^2 / 4): expandable at
        // 0 and smooth on |t| <= 0.45
        auto poly = [&](int deg) {
            std::string s = std::to_string(coeff(rng));
            for (int d = 1; d <= deg; ++d)
                s += " + " + std::to_string(coeff(rng)) + "*t^" + std::to_string(d);
            return "(" + s + ")";
        };
        const std::string text = poly(3) + "/(1 + t^2*" + poly(2) + "^2/4)" +
                                 " + sqrt(1 + t^2*" + poly(2) + "^2/4)";
        const ScalarExpr e = ScalarExpr::parse(text);
        const Jet j = expand(e, K);

        const double t1 = 0.25, t2 = 0.125;
        const double err1 = std::abs(eval(e, t1) - j.eval(t1));
        const double err2 = std::abs(eval(e, t2) - j.eval(t2));
        if (err2 < 1e-12) continue; // truncation error below float noise
        ++validated;
        CHECK(err1 / err2 >= std::pow(2.0, K) / 4.0);
    }
    CHECK(validated >= 50);
}

TEST_CASE("arithmetic carries the minimum truncation order") {
    const Jet a(16), b(12);
    CHECK((a + b).order() == 12);
    CHECK((a * b).order() == 12);
    CHECK(derivative(a).order() == 15);
}
