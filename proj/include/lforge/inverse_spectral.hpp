#pragma once

#include <utility>
#include <vector>

#include "lforge/lattice_core.hpp"

namespace lforge {

// Result of the downward Euclidean reconstruction, including the
// intermediate U_n = J_n^2 values for diagnostics.
struct ReconstructionReport {
    LatticeSpec lattice;
    double residual_spectrum_error = 0.0;  // max eigenvalue defect / spread
    double mirror_defect = 0.0;            // max absolute asymmetry
    std::vector<double> per_step_u;        // U_1 .. U_N before square roots
};

// Reconstructs the unique mirror-symmetric chain whose spectrum is the given
// strictly increasing set. Throws NegativeUn when some U_n <= 0 (the spectrum
// admits no positive-coupling chain) and DegreeDefect when a division step is
// inconsistent (including nearly coincident eigenvalues).
ReconstructionReport reconstruct(const Spectrum& spectrum);

// (max relative eigenvalue defect, mirror defect) of `lattice` against
// `spectrum`, via dense numeric eigendecomposition.
std::pair<double, double> verify_roundtrip(const Spectrum& spectrum,
                                           const LatticeSpec& lattice);

}  // namespace lforge
