#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <vector>

// Internal extended-precision workhorse. Monomial-basis polynomial arithmetic
// on spectra with exponential dynamic range cancels catastrophically in
// doubles (measured: q-Racah needs ~120 significant digits at N=20), while
// the underlying inverse problems are well-conditioned. All of it is done at
// a fixed 240 decimal digits — pure software floats, bit-deterministic.
namespace lforge::detail {

using Big = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<240>, boost::multiprecision::et_off>;

// Monic polynomial with the given roots; coefficients ascending by degree.
std::vector<Big> poly_from_roots(const std::vector<Big>& roots);

// Quotient of a polynomial by (x - root), remainder discarded.
std::vector<Big> synthetic_quotient(const std::vector<Big>& poly,
                                    const Big& root);

// Barycentric weights omega_s = 1 / prod_{i != s} (t_s - t_i).
std::vector<Big> barycentric_omega(const std::vector<Big>& nodes);

struct ChiInterpolantBig {
    std::vector<Big> coeffs;  // ascending, degree N
    Big lead;                 // coeffs.back(); equals 1/(J_1...J_N)
};

// Degree-N interpolant of the sign-alternating values (-1)^{N+s} at the
// given strictly increasing nodes.
ChiInterpolantBig chi_interpolant(const std::vector<Big>& nodes);

// det(xI - J) and its x-derivative via the three-term determinant recursion.
void char_eval(const std::vector<Big>& couplings,
               const std::vector<Big>& site_constants, const Big& x,
               Big* value, Big* derivative);

// Polish double-precision eigenvalue seeds of the tridiagonal (J, B) to full
// working precision with bracket-safeguarded Newton iteration.
std::vector<Big> refine_eigenvalues(const std::vector<double>& couplings,
                                    const std::vector<double>& site_constants,
                                    const std::vector<double>& seeds);

}  // namespace lforge::detail
