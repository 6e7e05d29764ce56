#pragma once

#include <complex>
#include <vector>

#include "lforge/lattice_core.hpp"
#include "lforge/predictions.hpp"

namespace lforge {

// Eigendecomposition of a chain Hamiltonian. Rows of `transform` are the
// eigenvectors: transform[s][n] = W_{s,n}, sign-fixed so W_{s,0} > 0, with
// eigenvalues ascending. weights[s] = W_{s,0}^2 are the discrete weights.
struct EigenSystem {
    int n_max = 0;
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> transform;
    std::vector<double> weights;

    int sites() const { return n_max + 1; }
};

// Complex site amplitudes E_n(z) at a propagation distance z.
struct AmplitudeField {
    double z = 0.0;
    std::vector<std::complex<double>> amplitudes;
};

enum class EventKind { PST, FR, Return };

inline const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::PST: return "PST";
        case EventKind::Return: return "return";
        default: return "FR";
    }
}

// A detected transport event: the excitation is (numerically) confined to the
// end sites at distance z, split by mixing angle theta with phase phi.
struct TransportEvent {
    double z = 0.0;
    EventKind kind = EventKind::FR;
    double theta = 0.0;    // atan2(|E_N|, |E_0|), in [0, pi/2]
    double phi = 0.0;      // phase of the end-site pair, in (-pi, pi]
    double leakage = 0.0;  // sum over interior sites of |E_n|^2
    double end_p0 = 0.0;   // |E_0|^2
    double end_pn = 0.0;   // |E_N|^2
};

// Symmetric tridiagonal path. Throws DegenerateSpectrum when an eigenvalue
// gap falls below 1e-12 times the spectral spread.
EigenSystem eigendecompose(const LatticeSpec& lattice);

// Dense symmetric path for the NNN pentadiagonal Hamiltonian.
EigenSystem eigendecompose(const PentadiagonalSpec& penta);

// E_n(z) = sum_s W_{s,source} W_{s,n} exp(-i z lambda_s).
AmplitudeField propagate(const EigenSystem& system, double z, int source = 0);

// |E_N(z)|^2 for source = 0.
double transfer_fidelity(const EigenSystem& system, double z);

// Scans z in (0, z_max] on a uniform grid, refines local leakage minima below
// threshold by golden-section search (to 1e-10 in z) and classifies them.
// N=1 chains never leak; for them only the extremal events (PST maxima and
// perfect returns) are reported.
std::vector<TransportEvent> detect_events(const EigenSystem& system,
                                          double z_max, int grid,
                                          double leakage_threshold);

// Simulates at prediction.distance: true iff leakage <= tol and the observed
// mixing angle matches prediction.mixing_angle within sqrt(tol), modulo the
// theta symmetries (theta ~ -theta ~ pi - theta). kind=None verifies trivially.
bool verify_event(const EigenSystem& system,
                  const TransportPrediction& prediction, double tol);

}  // namespace lforge
