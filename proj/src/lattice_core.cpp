#include "lforge/lattice_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace lforge {

Spectrum::Spectrum(std::vector<double> vals, double beta)
    : values(std::move(vals)), scale(beta) {
    validate();
}

void Spectrum::validate() const {
    if (values.size() < 2) {
        throw InvalidParams("spectrum needs at least 2 eigenvalues, got " +
                            std::to_string(values.size()));
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidParams("spectrum scale beta must be positive and finite");
    }
    for (std::size_t s = 0; s < values.size(); ++s) {
        if (!std::isfinite(values[s])) {
            throw NonMonotoneSpectrum("spectrum value at index " +
                                      std::to_string(s) + " is not finite");
        }
        if (s > 0 && !(values[s - 1] < values[s])) {
            throw NonMonotoneSpectrum(
                "spectrum is not strictly increasing at index " +
                std::to_string(s));
        }
    }
}

std::vector<double> Spectrum::physical() const {
    std::vector<double> out(values.size());
    for (std::size_t s = 0; s < values.size(); ++s) out[s] = scale * values[s];
    return out;
}

LatticeSpec::LatticeSpec(int n, std::vector<double> j, std::vector<double> b,
                         std::map<std::string, std::string> m)
    : n_max(n), couplings(std::move(j)), site_constants(std::move(b)),
      meta(std::move(m)) {
    validate();
}

void LatticeSpec::validate() const {
    if (n_max < 1) {
        throw InvalidParams("lattice needs n_max >= 1, got " +
                            std::to_string(n_max));
    }
    if (couplings.size() != static_cast<std::size_t>(n_max)) {
        throw InvalidParams("lattice expects " + std::to_string(n_max) +
                            " couplings, got " +
                            std::to_string(couplings.size()));
    }
    if (site_constants.size() != static_cast<std::size_t>(n_max + 1)) {
        throw InvalidParams("lattice expects " + std::to_string(n_max + 1) +
                            " site constants, got " +
                            std::to_string(site_constants.size()));
    }
    for (std::size_t n = 0; n < couplings.size(); ++n) {
        if (!(couplings[n] > 0.0) || !std::isfinite(couplings[n])) {
            throw InvalidParams("coupling J_" + std::to_string(n + 1) +
                                " must be positive and finite");
        }
    }
    for (std::size_t n = 0; n < site_constants.size(); ++n) {
        if (!std::isfinite(site_constants[n])) {
            throw InvalidParams("site constant B_" + std::to_string(n) +
                                " is not finite");
        }
    }
}

void PentadiagonalSpec::validate() const {
    if (n_max < 1) throw InvalidParams("pentadiagonal needs n_max >= 1");
    if (diag.size() != static_cast<std::size_t>(n_max + 1) ||
        off1.size() != static_cast<std::size_t>(n_max) ||
        off2.size() != static_cast<std::size_t>(n_max > 0 ? n_max - 1 : 0)) {
        throw InvalidParams("pentadiagonal band sizes inconsistent with n_max");
    }
}

GeometryParams::GeometryParams(double a, double c)
    : amplitude_A(a), decay_C(c) {
    validate();
}

void GeometryParams::validate() const {
    if (!(amplitude_A > 0.0) || !std::isfinite(amplitude_A)) {
        throw InvalidParams("geometry amplitude A must be positive");
    }
    if (!(decay_C > 0.0) || !std::isfinite(decay_C)) {
        throw InvalidParams("geometry decay C must be positive");
    }
}

double mirror_defect(const LatticeSpec& lattice) {
    const int n_sites = lattice.sites();
    double defect = 0.0;
    // B_{N-n} vs B_n over the diagonal, J_{N-n+1} vs J_n over the coupling band.
    for (int n = 0; n < n_sites; ++n) {
        defect = std::max(defect, std::abs(lattice.site_constants[n_sites - 1 - n] -
                                           lattice.site_constants[n]));
    }
    for (int n = 1; n <= lattice.n_max; ++n) {
        defect = std::max(defect, std::abs(lattice.couplings[lattice.n_max - n] -
                                           lattice.couplings[n - 1]));
    }
    return defect;
}

bool validate_mirror_symmetry(const LatticeSpec& lattice, double tol) {
    return mirror_defect(lattice) <= tol;
}

std::vector<double> couplings_to_distances(const LatticeSpec& lattice,
                                           const GeometryParams& geom) {
    geom.validate();
    std::vector<double> distances;
    distances.reserve(lattice.couplings.size());
    for (std::size_t n = 0; n < lattice.couplings.size(); ++n) {
        const double j = lattice.couplings[n];
        if (j > geom.amplitude_A) {
            throw CouplingExceedsAmplitude(
                "coupling J_" + std::to_string(n + 1) + " = " +
                std::to_string(j) + " exceeds amplitude A = " +
                std::to_string(geom.amplitude_A));
        }
        distances.push_back(std::log(geom.amplitude_A / j) / geom.decay_C);
    }
    return distances;
}

std::vector<double> distances_to_couplings(const std::vector<double>& distances,
                                           const GeometryParams& geom) {
    geom.validate();
    std::vector<double> couplings;
    couplings.reserve(distances.size());
    for (std::size_t n = 0; n < distances.size(); ++n) {
        if (!(distances[n] >= 0.0) || !std::isfinite(distances[n])) {
            throw NegativeDistance("distance at index " + std::to_string(n) +
                                   " must be non-negative");
        }
        couplings.push_back(geom.amplitude_A *
                            std::exp(-geom.decay_C * distances[n]));
    }
    return couplings;
}

PentadiagonalSpec build_nnn(const LatticeSpec& lattice, double alpha_nnn,
                            double beta_nnn) {
    lattice.validate();
    const int n_sites = lattice.sites();
    const auto& b = lattice.site_constants;

    // 1-based view of the couplings with the implicit J_0 = J_{N+1} = 0.
    auto j = [&](int n) -> double {
        if (n < 1 || n > lattice.n_max) return 0.0;
        return lattice.couplings[n - 1];
    };

    PentadiagonalSpec out;
    out.n_max = lattice.n_max;
    out.diag.resize(n_sites);
    out.off1.resize(lattice.n_max);
    out.off2.resize(lattice.n_max - 1);

    for (int n = 0; n < n_sites; ++n) {
        out.diag[n] =
            alpha_nnn * (j(n) * j(n) + b[n] * b[n] + j(n + 1) * j(n + 1)) +
            beta_nnn * b[n];
    }
    for (int n = 1; n <= lattice.n_max; ++n) {
        out.off1[n - 1] = j(n) * (alpha_nnn * (b[n - 1] + b[n]) + beta_nnn);
    }
    for (int n = 1; n <= lattice.n_max - 1; ++n) {
        out.off2[n - 1] = alpha_nnn * j(n) * j(n + 1);
    }
    return out;
}

}  // namespace lforge
