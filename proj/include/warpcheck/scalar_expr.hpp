#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "warpcheck/deriv2.hpp"
#include "warpcheck/jet.hpp"
#include "warpcheck/rational.hpp"

namespace warpcheck::series {

/// Closed-form expression in one variable t over
/// {constant, t, +, -, *, /, integer power, sqrt}.
/// Immutable; copies share the tree. Canonical text form is infix with `t`,
/// `^` for integer powers and `sqrt(...)`, e.g. "1 + 2*t^4 + 2*t^8".
class ScalarExpr {
public:
    ScalarExpr(); // the constant 0

    static ScalarExpr constant(const Rational& c);
    static ScalarExpr constant(long c) { return constant(Rational(c)); }
    static ScalarExpr t();

    /// Parses the canonical text form; throws ParseError.
    static ScalarExpr parse(std::string_view text);

    std::string str() const;

    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator-(const ScalarExpr& a);
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr pow(const ScalarExpr& a, int e);
    friend ScalarExpr sqrt(const ScalarExpr& a);

    struct Node;
    const Node& root() const { return *node_; }

private:
    explicit ScalarExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// Floating evaluation; throws DomainError (division by zero / negative
/// radicand), with the offending t in the message.
double eval(const ScalarExpr& e, double t);

/// Value with first and second derivative at t.
Deriv2 eval_d2(const ScalarExpr& e, double t);

/// Exact evaluation at a rational point; throws NotExpandable if the
/// expression contains sqrt, DomainError on division by zero.
Rational eval_exact(const ScalarExpr& e, const Rational& t);
RationalDeriv2 eval_d2_exact(const ScalarExpr& e, const Rational& t);

/// Exact rational Taylor coefficients at t = 0 through the given order.
/// Throws NotExpandable when an inner denominator vanishes at 0 or a
/// radicand is not positive (a perfect rational square) at 0.
Jet expand(const ScalarExpr& e, int order);

} // namespace warpcheck::series
