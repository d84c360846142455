#include "warpcheck/jet.hpp"

#include <algorithm>
#include <sstream>

namespace warpcheck::series {

namespace {
int min_order(const Jet& a, const Jet& b) {
    return std::min(a.order(), b.order());
}
} // namespace

Jet truncated(const Jet& a, int order) {
    Jet r(order);
    const int n = std::min(order, a.order());
    for (int k = 0; k <= n; ++k) r.coeff_mut(k) = a.coeff(k);
    return r;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r(min_order(a, b));
    for (int k = 0; k <= r.order(); ++k) r.coeff_mut(k) = a.coeff(k) + b.coeff(k);
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    Jet r(min_order(a, b));
    for (int k = 0; k <= r.order(); ++k) r.coeff_mut(k) = a.coeff(k) - b.coeff(k);
    return r;
}

Jet operator-(const Jet& a) {
    Jet r(a.order());
    for (int k = 0; k <= r.order(); ++k) r.coeff_mut(k) = -a.coeff(k);
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    // Cauchy product truncated at the minimum operand order.
    Jet r(min_order(a, b));
    for (int k = 0; k <= r.order(); ++k) {
        Rational s(0);
        for (int i = 0; i <= k; ++i) s += a.coeff(i) * b.coeff(k - i);
        r.coeff_mut(k) = s;
    }
    return r;
}

Jet operator*(const Rational& c, const Jet& a) {
    Jet r(a.order());
    for (int k = 0; k <= r.order(); ++k) r.coeff_mut(k) = c * a.coeff(k);
    return r;
}

Jet operator*(const Jet& a, const Rational& c) { return c * a; }

Jet operator/(const Jet& a, const Jet& b) {
    if (b.coeff(0) == 0)
        throw DivisionByZeroConstantTerm(
            "jet division requires a nonzero constant term in the divisor");
    // q_k = (a_k - sum_{i<k} q_i b_{k-i}) / b_0, so that q*b = a through the
    // truncation order.
    Jet q(min_order(a, b));
    const Rational inv_b0 = Rational(1) / b.coeff(0);
    for (int k = 0; k <= q.order(); ++k) {
        Rational s = a.coeff(k);
        for (int i = 0; i < k; ++i) s -= q.coeff(i) * b.coeff(k - i);
        q.coeff_mut(k) = s * inv_b0;
    }
    return q;
}

Jet sqrt(const Jet& a) {
    if (sign_of(a.coeff(0)) <= 0)
        throw NonPositiveConstantTerm(
            "jet sqrt requires a positive constant term");
    const auto root = rational_sqrt(a.coeff(0));
    if (!root)
        throw DomainError("jet sqrt: constant term " + warpcheck::to_string(a.coeff(0)) +
                          " is not the square of a rational");
    Jet s(a.order());
    s.coeff_mut(0) = *root;
    const Rational inv_2s0 = Rational(1) / (Rational(2) * *root);
    for (int k = 1; k <= s.order(); ++k) {
        Rational acc = a.coeff(k);
        for (int i = 1; i < k; ++i) acc -= s.coeff(i) * s.coeff(k - i);
        s.coeff_mut(k) = acc * inv_2s0;
    }
    return s;
}

Jet pow(const Jet& a, int e) {
    if (e < 0) return pow(Jet::constant(1, a.order()) / a, -e);
    Jet r = Jet::constant(1, a.order());
    Jet base = a;
    unsigned k = static_cast<unsigned>(e);
    while (k) {
        if (k & 1u) r = r * base;
        base = base * base;
        k >>= 1u;
    }
    return r;
}

Jet derivative(const Jet& a) {
    const int n = std::max(a.order() - 1, 0);
    Jet r(n);
    for (int k = 0; k <= n && k + 1 <= a.order(); ++k)
        r.coeff_mut(k) = Rational(k + 1) * a.coeff(k + 1);
    return r;
}

VanishingOrder vanishing_order(const Jet& a) {
    for (int k = 0; k <= a.order(); ++k)
        if (a.coeff(k) != 0) return {k, a.coeff(k)};
    return {std::nullopt, Rational(0)};
}

std::string to_string(const Jet& a) {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= a.order(); ++k) {
        if (a.coeff(k) == 0) continue;
        if (!first) os << " + ";
        os << warpcheck::to_string(a.coeff(k));
        if (k == 1) os << "*t";
        if (k > 1) os << "*t^" << k;
        first = false;
    }
    if (first) os << "0";
    os << " + O(t^" << a.order() + 1 << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Jet& a) {
    return os << to_string(a);
}

} // namespace warpcheck::series
