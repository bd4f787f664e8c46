#pragma once

#include <stdexcept>
#include <string>

namespace osb {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector dimensions do not match, or a dimension is odd / too small.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An input violates a geometric precondition (point not on M, inside M, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative solver did not reach its residual tolerance.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual)
        : Error(what + " (best residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

/// A tangency solve converged onto the wrong ray branch (s <= 0).
class OrientationError : public SolverError {
public:
    using SolverError::SolverError;
};

/// A billiard iterate landed inside the body; signals numerical failure.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Adaptive integration failed (step-size underflow etc.).
class IntegrationError : public Error {
public:
    using Error::Error;
};

/// A constants estimator could not resolve a quantity on its sampling grid.
class EstimationError : public Error {
public:
    using Error::Error;
};

/// Config document violates the schema. Carries the offending field path.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string field)
        : Error(what + " [field: " + field + "]"), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// A parameter value is outside its documented validity range.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// File could not be written / read.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace osb
