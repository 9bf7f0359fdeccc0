#pragma once

#include <stdexcept>
#include <string>

namespace ranktwo {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation left the declared domain: square root of a negative guard
/// expression, pole of a coefficient curve inside a requested interval,
/// division by an exactly-zero denominator with a nonzero numerator.
struct DomainError : Error {
    using Error::Error;
};

/// A violated call contract: dimension mismatch, invalid parameters,
/// unsupported variant, empty trajectory.
struct ContractError : Error {
    using Error::Error;
};

/// An adaptive solve gave up: step size underflowed before reaching the
/// requested tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Invalid run configuration (CLI layer).
struct ConfigError : Error {
    using Error::Error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractError(what);
}

}  // namespace ranktwo
