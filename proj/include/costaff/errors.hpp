#pragma once

#include <stdexcept>
#include <string>

namespace costaff {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Distribution mean is zero where a positive mean is required.
struct ZeroMeanError : Error {
    using Error::Error;
};

// Quantile argument outside [0, 1].
struct InvalidQuantileError : Error {
    using Error::Error;
};

// Integrand returned a non-finite value at a quadrature node.
struct NonFiniteIntegrandError : Error {
    using Error::Error;
};

// Value iteration failed to contract within the iteration budget.
struct NoConvergenceError : Error {
    using Error::Error;
};

// No sign change found when bracketing a root.
struct BracketFailureError : Error {
    using Error::Error;
};

// Simulation produced too few events per batch for batch means.
struct DegenerateHorizonError : Error {
    using Error::Error;
};

// Requested policy is undefined in the given cost regime.
struct InvalidRegimeError : Error {
    using Error::Error;
};

// Malformed or inconsistent run configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace costaff
