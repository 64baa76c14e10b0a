#pragma once

#include <stdexcept>
#include <string>

namespace tetra {

enum class ErrorKind {
    DimensionMismatch,
    NoConvergence,
    NotPsd,
    UnsolvableOnRange,
    BetaUndefined,
    NotCommuting,
    DeflationFailed,
    NotContraction,
    FundamentalEquationsFail,
    HypothesisViolated,
    NotPure,
    TailNotReached,
    OutsideResolventSet,
    EmptyFilter,
    Parse,
};

const char* to_string(ErrorKind kind);

/// Library error. `residual()` carries the offending measurement when one
/// exists (commutator norm, equation residual, achieved tail, ...), else 0.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double residual = 0.0)
        : std::runtime_error(what), kind_(kind), residual_(residual) {}

    ErrorKind kind() const noexcept { return kind_; }
    double residual() const noexcept { return residual_; }

private:
    ErrorKind kind_;
    double residual_;
};

} // namespace tetra
