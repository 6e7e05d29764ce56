#pragma once

#include <string>
#include <vector>

#include "lforge/lattice_core.hpp"
#include "lforge/predictions.hpp"

namespace lforge {

enum class Family { Krawtchouk, ParaKrawtchouk, DualHahn, QRacah, ParaRacah };

std::string to_string(Family family);
Family family_from_string(const std::string& name);  // InvalidParams on unknown

// Parameters for the five analytic families. Only the fields relevant to the
// chosen family are read; validate() checks the family-specific ranges.
struct ModelParams {
    Family family = Family::Krawtchouk;
    int n_max = 1;
    double beta = 1.0;   // global spectral scale, > 0
    double delta = 1.0;  // para-Krawtchouk, in (0, 2)
    double gamma = 0.0;  // dual-Hahn, > -1
    int big_k = 6;       // q-Racah, integer > 2 (q = K/2 - sqrt(K^2/4 - 1))
    double a = 0.0;      // para-Racah, > -1/2
    double c = 0.5;      // para-Racah, |a| < c < |a+1|
    int j_split = -1;    // para-Racah truncation; -1 selects the default

    // (N-1)/2 for odd N, N/2 for even N, unless overridden.
    int resolved_j_split() const;
    void validate() const;
};

// Closed-form spectrum, strictly increasing, with beta as the Spectrum scale.
Spectrum spectrum(const ModelParams& params);

// Exponential lattice q^(N/2-s) - q^(s-N/2) for an arbitrary q in (0, 1).
// spectrum() uses q = K/2 - sqrt(K^2/4 - 1); exposed separately so the
// q -> 1 Krawtchouk limit is checkable at q values no integer K reaches.
Spectrum q_racah_spectrum_from_q(double q, int n_max, double beta);

// Closed-form couplings and site constants; mirror-symmetric by construction.
// Throws UnsupportedParamRegion when a radicand goes negative.
LatticeSpec couplings(const ModelParams& params);

// Minimal PST / FR events (plus the next admissible ones) with mixing angles
// and phases; constraint violations are reported as kind=None entries with an
// explanatory note, never thrown.
std::vector<TransportPrediction> predict_transport(const ModelParams& params);

// Transport analysis of the next-to-nearest-neighbour chain
// alpha*J^2 + beta*J built on the unit-scale Krawtchouk lattice of size
// n_max+1.
std::vector<TransportPrediction> nnn_krawtchouk_prediction(int n_max,
                                                           double alpha_nnn,
                                                           double beta_nnn);

}  // namespace lforge
