// SPDX-License-Identifier: MIT
//
// Error types shared across the library.  Every failure mode carries a
// message with the offending values so batch drivers can log per-record
// diagnostics instead of aborting a sweep.

#pragma once

#include <stdexcept>
#include <string>

namespace ngmzi {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A parameter left its validity domain (negative thermal occupancy,
/// transmissivity outside [0,1], ...).
struct DomainError : Error {
    using Error::Error;
};

/// Derivative order exceeds the configured cap of the series engine;
/// signals combinatorial blow-up rather than a numerical problem.
struct OrderTooLarge : Error {
    using Error::Error;
};

/// Covariance matrix is not invertible (det V <= 0).
struct SingularCovariance : Error {
    using Error::Error;
};

/// A heralding branch carries no probability mass; the conditional state
/// is undefined (e.g. detecting one photon behind a fully transmissive
/// beamsplitter fed with vacuum on the ancilla port).
struct NegligibleProbability : Error {
    using Error::Error;
};

/// Scalar minimization found no interior minimum on the requested interval
/// (the objective is monotone there).
struct NoMinimumInRange : Error {
    using Error::Error;
};

/// A truncated Fock-space object lost more probability mass past the
/// cutoff than the configured tolerance allows.
struct TailTooLarge : Error {
    using Error::Error;
};

/// Sweep/figure configuration is malformed or violates parameter domains.
struct ConfigError : Error {
    using Error::Error;
};

/// File output failed.
struct IOError : Error {
    using Error::Error;
};

}  // namespace ngmzi
