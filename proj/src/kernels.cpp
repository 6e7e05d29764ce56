#include "lforge/kernels.hpp"

#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lforge::kernels {

int effective_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* cap = std::getenv("LATTICE_FORGE_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1 && c < n) n = c;
    }
    return n;
}

void amplitudes_at(const EigenSystem& system, double z, int source,
                   std::complex<double>* out) {
    const int n_sites = system.sites();
    for (int n = 0; n < n_sites; ++n) out[n] = {0.0, 0.0};
    for (int s = 0; s < n_sites; ++s) {
        const double phase = -z * system.eigenvalues[s];
        const std::complex<double> factor =
            system.transform[s][source] *
            std::complex<double>(std::cos(phase), std::sin(phase));
        const auto& row = system.transform[s];
        for (int n = 0; n < n_sites; ++n) out[n] += factor * row[n];
    }
}

double leakage_at(const EigenSystem& system, double z, int source) {
    const int n_sites = system.sites();
    std::vector<std::complex<double>> amp(n_sites);
    amplitudes_at(system, z, source, amp.data());
    double leak = 0.0;
    for (int n = 1; n + 1 < n_sites; ++n) leak += std::norm(amp[n]);
    return leak;
}

double fidelity_at(const EigenSystem& system, double z, int source) {
    // Only E_N is needed: E_N = sum_s W_{s,source} W_{s,N} e^{-iz lambda_s}.
    const int last = system.n_max;
    std::complex<double> e_n{0.0, 0.0};
    for (int s = 0; s < system.sites(); ++s) {
        const double phase = -z * system.eigenvalues[s];
        e_n += system.transform[s][source] * system.transform[s][last] *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return std::norm(e_n);
}

double return_probability_at(const EigenSystem& system, double z, int source) {
    std::complex<double> e_0{0.0, 0.0};
    for (int s = 0; s < system.sites(); ++s) {
        const double phase = -z * system.eigenvalues[s];
        e_0 += system.transform[s][source] * system.transform[s][source] *
               std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return std::norm(e_0);
}

std::vector<double> leakage_scan_serial(const EigenSystem& system,
                                        const std::vector<double>& zs,
                                        int source) {
    std::vector<double> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        out[i] = leakage_at(system, zs[i], source);
    }
    return out;
}

std::vector<double> leakage_scan_parallel(const EigenSystem& system,
                                          const std::vector<double>& zs,
                                          int source) {
    std::vector<double> out(zs.size());
    const long long count = static_cast<long long>(zs.size());
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (long long i = 0; i < count; ++i) {
        out[i] = leakage_at(system, zs[i], source);
    }
    return out;
}

std::vector<double> fidelity_scan_serial(const EigenSystem& system,
                                         const std::vector<double>& zs,
                                         int source) {
    std::vector<double> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        out[i] = fidelity_at(system, zs[i], source);
    }
    return out;
}

std::vector<double> fidelity_scan_parallel(const EigenSystem& system,
                                           const std::vector<double>& zs,
                                           int source) {
    std::vector<double> out(zs.size());
    const long long count = static_cast<long long>(zs.size());
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (long long i = 0; i < count; ++i) {
        out[i] = fidelity_at(system, zs[i], source);
    }
    return out;
}

std::vector<std::vector<std::complex<double>>> trace_scan_serial(
    const EigenSystem& system, const std::vector<double>& zs, int source) {
    std::vector<std::vector<std::complex<double>>> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        out[i].resize(system.sites());
        amplitudes_at(system, zs[i], source, out[i].data());
    }
    return out;
}

std::vector<std::vector<std::complex<double>>> trace_scan_parallel(
    const EigenSystem& system, const std::vector<double>& zs, int source) {
    std::vector<std::vector<std::complex<double>>> out(zs.size());
    const long long count = static_cast<long long>(zs.size());
#pragma omp parallel for schedule(static) num_threads(effective_threads())
    for (long long i = 0; i < count; ++i) {
        out[i].resize(system.sites());
        amplitudes_at(system, zs[i], source, out[i].data());
    }
    return out;
}

}  // namespace lforge::kernels
