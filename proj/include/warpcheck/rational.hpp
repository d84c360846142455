#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace warpcheck {

// Exact rationals over arbitrary-precision integers. Identity checks in the
// series and geometry modules are exact equality on these, never approximate.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign_of(const Rational& q) { return sgn(q); }

/// Exact square root when q is a perfect square of a rational; nullopt
/// otherwise. Requires q >= 0.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    const mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

/// Exact rational from a decimal literal such as "0.25" or "-3".
/// Used by the expression parser; throws nothing, returns nullopt on junk.
std::optional<Rational> rational_from_decimal(const std::string& text);

} // namespace warpcheck
