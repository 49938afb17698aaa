#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dgbo {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad grid construction parameters (odd or too-small n, non-positive length).
struct InvalidGridError : Error {
    using Error::Error;
};

/// Negative fractional-derivative order.
struct InvalidExponentError : Error {
    using Error::Error;
};

/// Dealiasing pad would exceed the configured memory cap.
struct ResourceError : Error {
    using Error::Error;
};

/// Generic precondition violation on operation inputs.
struct InvalidInputError : Error {
    using Error::Error;
};

/// Weinstein ratio requested for the zero field.
struct UndefinedRatioError : InvalidInputError {
    using InvalidInputError::InvalidInputError;
};

/// Equation residual requested for the zero field.
struct UndefinedResidualError : InvalidInputError {
    using InvalidInputError::InvalidInputError;
};

/// Fixed-point iteration failed to converge; carries the residual history
/// for divergence diagnosis.
struct DivergenceError : Error {
    DivergenceError(const std::string& what, std::vector<double> history)
        : Error(what), residual_history(std::move(history)) {}
    std::vector<double> residual_history;
};

/// Petviashvili stabilization factor overflowed/underflowed (iterate collapsed).
struct DegenerateIterationError : Error {
    using Error::Error;
};

/// Time stepping produced NaN/Inf; carries the last time that was still finite.
struct InstabilityError : Error {
    InstabilityError(const std::string& what, double last_good)
        : Error(what), last_good_time(last_good) {}
    double last_good_time = 0.0;
};

/// Picard sweeps exhausted without contraction (horizon too large for the data).
struct NoContractionError : Error {
    NoContractionError(const std::string& what, std::vector<double> history)
        : Error(what), sweep_differences(std::move(history)) {}
    std::vector<double> sweep_differences;
};

/// A theorem-specific operation was invoked outside its hypothesis (k <= 2*beta),
/// or on a trajectory whose data was not admissible.
struct InapplicableTheoremError : Error {
    using Error::Error;
};

/// Two formulations that must agree numerically did not.
struct InternalConsistencyError : Error {
    using Error::Error;
};

/// Malformed or inconsistent run configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace dgbo
