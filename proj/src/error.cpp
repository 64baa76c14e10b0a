#include "tetra/error.hpp"

namespace tetra {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::NotPsd: return "not PSD";
    case ErrorKind::UnsolvableOnRange: return "equation unsolvable on range";
    case ErrorKind::BetaUndefined: return "beta undefined on |x3|=1";
    case ErrorKind::NotCommuting: return "pair does not commute";
    case ErrorKind::DeflationFailed: return "deflation failed";
    case ErrorKind::NotContraction: return "not a contraction";
    case ErrorKind::FundamentalEquationsFail: return "fundamental equations fail";
    case ErrorKind::HypothesisViolated: return "hypothesis violated";
    case ErrorKind::NotPure: return "not pure";
    case ErrorKind::TailNotReached: return "tail tolerance not reached";
    case ErrorKind::OutsideResolventSet: return "z outside resolvent set";
    case ErrorKind::EmptyFilter: return "empty filter";
    case ErrorKind::Parse: return "parse error";
    }
    return "unknown";
}

} // namespace tetra
