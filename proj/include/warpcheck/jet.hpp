#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "warpcheck/errors.hpp"
#include "warpcheck/rational.hpp"

namespace warpcheck::series {

/// Truncated power series in t with exact rational coefficients.
/// A Jet of order K stores coefficients a0..aK; arithmetic results carry the
/// minimum truncation order of their operands, and no operation ever rounds.
class Jet {
public:
    static constexpr int default_order = 16;

    /// Zero jet of the given truncation order.
    explicit Jet(int order = default_order)
        : coeffs_(static_cast<size_t>(order) + 1, Rational(0)) {
        if (order < 0) throw InvalidParams("jet order must be >= 0");
    }

    static Jet constant(const Rational& c, int order = default_order) {
        Jet j(order);
        j.coeffs_[0] = c;
        return j;
    }

    /// The coordinate t as a jet.
    static Jet variable(int order = default_order) {
        Jet j(order);
        if (order >= 1) j.coeffs_[1] = 1;
        return j;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& coeff(int k) const { return coeffs_.at(static_cast<size_t>(k)); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational& coeff_mut(int k) { return coeffs_.at(static_cast<size_t>(k)); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// Horner evaluation of the truncated polynomial, exact.
    Rational eval(const Rational& t) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * t + *it;
        return acc;
    }

    double eval(double t) const {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * t + to_double(*it);
        return acc;
    }

    friend bool operator==(const Jet& a, const Jet& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<Rational> coeffs_;
};

Jet truncated(const Jet& a, int order);

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(const Rational& c, const Jet& a);
Jet operator*(const Jet& a, const Rational& c);

/// Long division; requires b to have a nonzero constant term.
/// Throws DivisionByZeroConstantTerm otherwise.
Jet operator/(const Jet& a, const Jet& b);

/// Exact square root via the recursion s*s = a. Requires a0 > 0
/// (NonPositiveConstantTerm) and a0 a perfect rational square (DomainError).
Jet sqrt(const Jet& a);

/// Integer powers; negative exponents go through the reciprocal and need a
/// unit constant term.
Jet pow(const Jet& a, int e);

/// Termwise derivative; truncation order drops by one.
Jet derivative(const Jet& a);

struct VanishingOrder {
    std::optional<int> order; // nullopt: zero through the truncation order
    Rational leading;         // 0 when saturated

    bool saturated() const { return !order.has_value(); }
};

VanishingOrder vanishing_order(const Jet& a);

std::string to_string(const Jet& a);
std::ostream& operator<<(std::ostream& os, const Jet& a);

} // namespace warpcheck::series
