#pragma once

#include <stdexcept>
#include <string>

namespace lforge {

// Base class for all library errors. Every failure mode gets its own type so
// callers (and the CLI exit-code mapping) can dispatch on what went wrong.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested coupling J exceeds the evanescent amplitude A: no physical
// waveguide separation can realize it.
struct CouplingExceedsAmplitude : Error {
    using Error::Error;
};

// Geometry input contains a negative separation.
struct NegativeDistance : Error {
    using Error::Error;
};

// The sign-alternating interpolant has non-positive leading coefficient:
// the spectrum cannot come from a mirror-symmetric chain with positive
// couplings.
struct NonPositiveLeadingCoefficient : Error {
    using Error::Error;
};

// A discrete weight came out non-positive: spectrum inconsistent with a
// positive-coupling chain.
struct NonPositiveWeight : Error {
    using Error::Error;
};

// The provided spectrum does not match the lattice's eigenvalues.
struct SpectrumMismatch : Error {
    using Error::Error;
};

// Reconstruction produced some U_n = J_n^2 <= 0: the spectrum admits no
// positive-coupling chain at working precision.
struct NegativeUn : Error {
    using Error::Error;
};

// Polynomial division left a remainder beyond tolerance, or the inputs are
// too degenerate to reconstruct from: inconsistent inputs.
struct DegreeDefect : Error {
    using Error::Error;
};

// A spectrum is not strictly increasing (invalid parameter combination).
struct NonMonotoneSpectrum : Error {
    using Error::Error;
};

// Closed-form family parameters outside the region where the formulas hold
// (e.g. a radicand goes negative).
struct UnsupportedParamRegion : Error {
    using Error::Error;
};

// Numeric eigendecomposition found a (near-)degenerate pair; transfer theory
// requires simple eigenvalues.
struct DegenerateSpectrum : Error {
    using Error::Error;
};

// CLI/front-end: bad user parameters (exit 2).
struct InvalidParams : Error {
    using Error::Error;
};

// CLI/front-end: file system failure (exit 3).
struct IoError : Error {
    using Error::Error;
};

// CLI/front-end: malformed input file or inline JSON (exit 4).
struct ParseError : Error {
    using Error::Error;
};

}  // namespace lforge
