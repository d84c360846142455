#pragma once

#include <stdexcept>
#include <string>

namespace warpcheck {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation outside the domain of an expression or metric (division by
/// zero, negative radicand, nonpositive warp, t outside [-eps, eps]).
struct DomainError : Error {
    using Error::Error;
};

struct DivisionByZeroConstantTerm : Error {
    using Error::Error;
};

struct NonPositiveConstantTerm : Error {
    using Error::Error;
};

/// Expression has no exact Taylor expansion at t = 0 with rational
/// coefficients (unit/radicand conditions fail at the constant term).
struct NotExpandable : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct InvalidDimension : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct UnsupportedDimension : Error {
    using Error::Error;
};

struct ZeroField : Error {
    using Error::Error;
};

struct SigmaUnknown : Error {
    using Error::Error;
};

struct ZeroDenominator : Error {
    using Error::Error;
};

/// Thrown by gronwall::conclude_nonpositive when the caller did not run the
/// residual check on the same data first.
struct PreconditionUnchecked : Error {
    using Error::Error;
};

} // namespace warpcheck
