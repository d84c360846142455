#pragma once

#include <cmath>
#include <type_traits>

#include "warpcheck/errors.hpp"
#include "warpcheck/rational.hpp"

namespace warpcheck::series {

/// Second-order Taylor value: f together with f' and f'' at a point.
/// Instantiated with double for grid evaluation and with Rational for exact
/// sign checks at rational grid points (where the expression is sqrt-free).
template <class S>
struct TaylorD2 {
    S value{};
    S d1{};
    S d2{};

    static TaylorD2 constant(const S& c) { return {c, S(0), S(0)}; }
    static TaylorD2 variable(const S& t) { return {t, S(1), S(0)}; }

    friend TaylorD2 operator+(const TaylorD2& a, const TaylorD2& b) {
        return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
    }
    friend TaylorD2 operator-(const TaylorD2& a, const TaylorD2& b) {
        return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
    }
    friend TaylorD2 operator-(const TaylorD2& a) {
        return {-a.value, -a.d1, -a.d2};
    }
    friend TaylorD2 operator*(const TaylorD2& a, const TaylorD2& b) {
        return {a.value * b.value,
                a.d1 * b.value + a.value * b.d1,
                a.d2 * b.value + S(2) * a.d1 * b.d1 + a.value * b.d2};
    }
    friend TaylorD2 operator/(const TaylorD2& a, const TaylorD2& b) {
        if (is_zero(b.value)) throw DomainError("division by zero");
        const S v = a.value / b.value;
        const S d1 = (a.d1 - v * b.d1) / b.value;
        const S d2 = (a.d2 - S(2) * d1 * b.d1 - v * b.d2) / b.value;
        return {v, d1, d2};
    }

    friend TaylorD2 sqrt(const TaylorD2& a) {
        if constexpr (std::is_same_v<S, double>) {
            if (!(a.value > 0)) throw DomainError("square root of a nonpositive value");
            const double r = std::sqrt(a.value);
            const double d1 = a.d1 / (2 * r);
            const double d2 = (a.d2 - 2 * d1 * d1) / (2 * r);
            return {r, d1, d2};
        } else {
            throw NotExpandable("square root is not exactly evaluable at a rational point");
        }
    }

    friend TaylorD2 pow(const TaylorD2& a, int e) {
        if (e < 0) return TaylorD2::constant(S(1)) / pow(a, -e);
        TaylorD2 r = TaylorD2::constant(S(1));
        TaylorD2 base = a;
        unsigned k = static_cast<unsigned>(e);
        while (k) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

private:
    static bool is_zero(const S& v) {
        if constexpr (std::is_same_v<S, double>) return v == 0.0;
        else return sgn(v) == 0;
    }
};

using Deriv2 = TaylorD2<double>;
using RationalDeriv2 = TaylorD2<Rational>;

} // namespace warpcheck::series
