#pragma once

#include <stdexcept>
#include <string>

namespace ghartree {

/// Parameter combinations outside the standing assumptions (0 < b < N, p >= 2, ...).
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A field containing NaN/Inf samples; raised on observable evaluation.
struct PoisonedField : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched grid between a cached kernel/plan and its argument.
struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Scalar argument outside the domain of a closed-form expression.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// An operation was asked to run outside its criticality regime.
struct WrongRegime : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Iterative solver exhausted its budget without meeting the tolerance.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative solver diverged (stabilizing factor left its safe range).
struct Divergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Root finder found no sign change in the given bracket.
struct NoRootInBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ghartree
