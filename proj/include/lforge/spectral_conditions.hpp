#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lforge/lattice_core.hpp"
#include "lforge/transport.hpp"

namespace lforge {

// Minimal perfect-state-transfer solution: all gaps equal (pi/z_pst) times an
// odd integer, with the multiplier list reduced (gcd 1).
struct PstResult {
    double z_pst = 0.0;
    std::vector<long long> multipliers;  // M_s, s = 1..N, all odd
};

// One admissible revival distance together with the congruence data that
// certifies it. theta is the canonical representative in [0, pi/2];
// theta_raw keeps the sign before folding.
struct FrEvent {
    double z_fr = 0.0;
    double theta = 0.0;
    double theta_raw = 0.0;
    double phi = 0.0;
    std::vector<long long> l0;  // integers for the even-top gap family
    std::vector<long long> l1;  // integers for the odd-top gap family
    EventKind kind = EventKind::FR;
};

struct ConditionReport {
    std::optional<PstResult> pst;
    std::vector<FrEvent> fr;
    std::string notes;
};

// Best rational p/q approximation of x > 0 with q <= max_den, accepted only
// when |x - p/q| <= tol * max(1, x). Continued-fraction convergents.
std::optional<std::pair<long long, long long>> rationalize(
    double x, long long max_den = 1000000, double tol = 1e-9);

// Minimal Z > 0 with every physical gap equal to (pi/Z) * (odd integer), or
// nullopt when no such Z exists.
std::optional<PstResult> check_pst(const Spectrum& spectrum, double tol = 1e-9);

// All admissible revival distances Z <= horizon (default 20*pi/scale) with
// their mixing angles and integer certificate sequences. Entries whose angle
// is a multiple of pi/2 are labeled PST or Return; the rest are genuine FR.
std::vector<FrEvent> check_fr(const Spectrum& spectrum, double tol = 1e-9,
                              double horizon = 0.0);

// PST check for the next-to-nearest-neighbour model: applies check_pst to the
// transformed spectrum {alpha*lambda^2 + beta*lambda}; a non-injective
// transform yields nullopt.
std::optional<PstResult> check_pst_nnn(const Spectrum& spectrum,
                                       double alpha_nnn, double beta_nnn,
                                       double tol = 1e-9);

// Finite-difference expansion in the binomial basis: p(s) = sum_n c_n C(s,n).
// Returns the integer coefficients iff all are integers within tol.
std::optional<std::vector<long long>> integer_valued_basis(
    const std::vector<double>& poly_values, double tol = 1e-9);

// Combined PST + FR analysis with explanatory notes (CLI `verify` payload).
ConditionReport analyze(const Spectrum& spectrum, double tol = 1e-9,
                        double horizon = 0.0);

}  // namespace lforge
