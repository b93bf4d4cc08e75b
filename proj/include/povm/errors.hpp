#pragma once

#include <stdexcept>
#include <string>

namespace povm {

/// Root of the toolkit error hierarchy. Everything thrown on a scientific
/// failure path derives from this; configuration and IO problems use
/// ConfigError so callers can distinguish the two.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric input outside its admissible range (interval endpoints, shift
/// amounts, blend parameters, ...).
class RangeError : public Error {
public:
    using Error::Error;
};

/// Operands whose dimensions or index schemes do not match.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A constructor or operation invariant failed validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operation defined only for one index scheme was called on the other.
class UnsupportedIndexingError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold for the inputs.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Eigensolver failed to converge. residual is the off-diagonal norm left
/// when the sweep limit was reached.
class EigenError : public Error {
public:
    EigenError(const std::string& msg, double residual)
        : Error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

/// Bad configuration file, unknown schema field, or filesystem problem.
/// Mapped to a distinct process exit code by the command line driver.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace povm
