#pragma once

#include <vector>

#include "lforge/lattice_core.hpp"

namespace lforge {

// Polynomial in the monomial basis, coefficients ascending by degree,
// leading coefficient exactly 1.
struct MonicPoly {
    std::vector<double> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    double eval(double x) const;  // Horner
};

// The degree-N Lagrange interpolant of the sign-alternating end values
// chi_N(lambda_s) = (-1)^{N+s}, kept in both coefficient forms plus the
// barycentric data needed for stable off-node evaluation.
struct ChiInterpolant {
    std::vector<double> raw;         // interpolant coefficients, ascending
    MonicPoly monic;                 // raw / lead
    double lead = 0.0;               // leading coefficient = 1/(J_1...J_N) > 0
    std::vector<double> nodes;       // physical eigenvalues lambda_s
    std::vector<double> bary_omega;  // barycentric weights

    // Barycentric evaluation of the raw interpolant; exact at the nodes.
    double eval_raw(double x) const;
};

// Chain polynomials evaluated on the chain's own spectrum plus the discrete
// orthogonality weights. chi_table[n][s] = chi_n(lambda_s).
struct PolySystem {
    LatticeSpec lattice;
    std::vector<std::vector<double>> chi_table;
    std::vector<double> weights;   // w_s > 0, sum exactly 1
    double h_sqrt = 0.0;           // sqrt(h_N) = J_1 * ... * J_N
    double weight_defect = 0.0;    // |sum w_s - 1| before normalization
    double ortho_defect = 0.0;     // max entry defect of sum_s w chi_n chi_m - delta
};

// [chi_0(x) .. chi_N(x)] by the forward three-term recurrence
// x chi_n = J_{n+1} chi_{n+1} + B_n chi_n + J_n chi_{n-1}.
std::vector<double> eval_chi(const LatticeSpec& lattice, double x);

// P_{N+1}(x) = prod_s (x - beta*lambda_s).
MonicPoly characteristic_poly(const Spectrum& spectrum);

// Lagrange construction of chi_N from the spectrum alone. Throws
// NonPositiveLeadingCoefficient when the interpolant's leading coefficient
// is not positive (the spectrum then fits no positive-coupling mirror chain).
ChiInterpolant chi_n_from_spectrum(const Spectrum& spectrum);

// Discrete weights w_s = sqrt(h_N) / (chi_N(lambda_s) P'_{N+1}(lambda_s)),
// normalized to sum 1. The pre-normalization defect is written to
// `pre_normalization_defect` when non-null.
std::vector<double> weights_from_spectrum(
    const Spectrum& spectrum, double* pre_normalization_defect = nullptr);

// Assembles the PolySystem for a lattice whose eigenvalues match `spectrum`
// (checked within `tol` relative to the spectral spread; SpectrumMismatch
// otherwise). Internally the eigenvalues are polished to extended precision
// so the chi table and weights satisfy the orthogonality identities far below
// double rounding even for spectra with extreme dynamic range.
PolySystem build_poly_system(const LatticeSpec& lattice,
                             const Spectrum& spectrum, double tol = 1e-8);

}  // namespace lforge
