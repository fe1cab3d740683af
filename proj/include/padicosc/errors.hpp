#pragma once

#include <stdexcept>
#include <string>

namespace padicosc {

// Failure categories surfaced by the library. The CLI maps each to an exit code.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Neither branch condition of the ball Gauss integral holds (only possible at p = 2).
struct IndeterminateBranch : Error {
    using Error::Error;
};

/// Brute-force depth below the local-constancy depth.
struct DepthTooSmall : Error {
    using Error::Error;
};

/// sin(gamma'' - gamma') vanishes: the two-point problem is degenerate.
struct CausticError : Error {
    using Error::Error;
};

/// A series or trigonometric expansion is evaluated outside its certified region.
struct DivergenceError : Error {
    using Error::Error;
};

/// Results are not stable under doubling of the truncation order.
struct PrecisionError : Error {
    using Error::Error;
};

/// Prime cutoff does not cover the denominator's prime factors.
struct CutoffTooSmall : Error {
    using Error::Error;
};

/// Omega vacuum condition fails at the requested prime.
struct VacuumAbsent : Error {
    using Error::Error;
};

/// Requested feature is outside the implemented domain.
struct Unsupported : Error {
    using Error::Error;
};

/// A finite-place factor with declared L2 norm different from 1.
struct NormalizationError : Error {
    using Error::Error;
};

}  // namespace padicosc
