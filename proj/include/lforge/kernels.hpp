#pragma once

#include <complex>
#include <vector>

#include "lforge/transport.hpp"

// Batch evaluation kernels for z-grid scans. Each comes in a serial reference
// variant and an OpenMP variant; the per-point arithmetic is shared, so the
// two produce bit-identical results (asserted in tests, compared in the
// benchmark target). Parallelism is capped by LATTICE_FORGE_THREADS.
namespace lforge::kernels {

// Number of OpenMP threads the parallel kernels will use.
int effective_threads();

// Single-point evaluations (the shared inner kernel).
void amplitudes_at(const EigenSystem& system, double z, int source,
                   std::complex<double>* out);
double leakage_at(const EigenSystem& system, double z, int source);
double fidelity_at(const EigenSystem& system, double z, int source);
double return_probability_at(const EigenSystem& system, double z, int source);

// Interior leakage sum_{0<n<N}|E_n|^2 at each z.
std::vector<double> leakage_scan_serial(const EigenSystem& system,
                                        const std::vector<double>& zs,
                                        int source);
std::vector<double> leakage_scan_parallel(const EigenSystem& system,
                                          const std::vector<double>& zs,
                                          int source);

// End-site fidelity |E_N|^2 at each z.
std::vector<double> fidelity_scan_serial(const EigenSystem& system,
                                         const std::vector<double>& zs,
                                         int source);
std::vector<double> fidelity_scan_parallel(const EigenSystem& system,
                                           const std::vector<double>& zs,
                                           int source);

// Full amplitude rows (N+1 complex entries per z) for trace export.
std::vector<std::vector<std::complex<double>>> trace_scan_serial(
    const EigenSystem& system, const std::vector<double>& zs, int source);
std::vector<std::vector<std::complex<double>>> trace_scan_parallel(
    const EigenSystem& system, const std::vector<double>& zs, int source);

}  // namespace lforge::kernels
