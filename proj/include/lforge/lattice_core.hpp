#pragma once

#include <map>
#include <string>
#include <vector>

#include "lforge/errors.hpp"

namespace lforge {

// Ordered eigenvalue list with a global positive scale beta. `values` are the
// dimensionless lattice points; physical frequencies are beta * values[s].
struct Spectrum {
    std::vector<double> values;  // strictly increasing, length >= 2
    double scale = 1.0;          // beta > 0

    Spectrum() = default;
    Spectrum(std::vector<double> vals, double beta = 1.0);

    int n_max() const { return static_cast<int>(values.size()) - 1; }

    // beta * values[s] for s = 0..N.
    std::vector<double> physical() const;

    // Checks the invariants; throws NonMonotoneSpectrum / InvalidParams.
    void validate() const;
};

// Symmetric tridiagonal Hamiltonian of an (N+1)-site chain: couplings
// J_1..J_N on the off-diagonal, site constants B_0..B_N on the diagonal.
// J_0 = J_{N+1} = 0 is implicit and never stored.
struct LatticeSpec {
    int n_max = 0;                             // N >= 1
    std::vector<double> couplings;             // J_1..J_N, all > 0
    std::vector<double> site_constants;        // B_0..B_N
    std::map<std::string, std::string> meta;   // free-form provenance

    LatticeSpec() = default;
    LatticeSpec(int n, std::vector<double> j, std::vector<double> b,
                std::map<std::string, std::string> m = {});

    int sites() const { return n_max + 1; }

    void validate() const;
};

// Symmetric pentadiagonal matrix alpha*J^2 + beta*J produced by build_nnn.
struct PentadiagonalSpec {
    int n_max = 0;
    std::vector<double> diag;   // N+1 entries
    std::vector<double> off1;   // N entries
    std::vector<double> off2;   // N-1 entries

    int sites() const { return n_max + 1; }

    void validate() const;
};

// Evanescent-coupling model J = A * exp(-C * d).
struct GeometryParams {
    double amplitude_A = 1.0;  // > 0
    double decay_C = 1.0;      // > 0

    GeometryParams() = default;
    GeometryParams(double a, double c);

    void validate() const;
};

// True iff |B_{N-n} - B_n| <= tol and |J_{N-n+1} - J_n| <= tol for all n.
bool validate_mirror_symmetry(const LatticeSpec& lattice, double tol);

// Largest anti-diagonal asymmetry over both bands (the quantity the tolerance
// above is compared against).
double mirror_defect(const LatticeSpec& lattice);

// d_{n,n+1} = ln(A / J_{n+1}) / C for each coupling. Throws
// CouplingExceedsAmplitude if some J > A (negative distance would result).
std::vector<double> couplings_to_distances(const LatticeSpec& lattice,
                                           const GeometryParams& geom);

// Forward map J = A * exp(-C * d). Throws NegativeDistance.
std::vector<double> distances_to_couplings(const std::vector<double>& distances,
                                           const GeometryParams& geom);

// Next-to-nearest-neighbour Hamiltonian alpha*J^2 + beta*J, assembled
// band-by-band (matches the dense matrix product entry for entry).
PentadiagonalSpec build_nnn(const LatticeSpec& lattice, double alpha_nnn,
                            double beta_nnn);

}  // namespace lforge
