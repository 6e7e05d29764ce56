#include "lforge/transport.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

#include "lforge/kernels.hpp"

namespace lforge {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fold an angle onto its canonical representative in [0, pi/2]; theta is
// physical modulo sign and modulo pi (theta ~ -theta ~ pi - theta).
double canonical_theta(double t) {
    t = std::fmod(std::abs(t), kPi);
    if (t > kPi / 2.0) t = kPi - t;
    return t;
}

EigenSystem finalize(const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors,
                     int n_max) {
    const int n_sites = n_max + 1;
    const double spread = values[n_sites - 1] - values[0];
    for (int s = 1; s < n_sites; ++s) {
        const double gap = values[s] - values[s - 1];
        if (!(gap > 1e-12 * spread)) {
            throw DegenerateSpectrum(
                "eigenvalue gap at index " + std::to_string(s) +
                " is below 1e-12 of the spectral spread");
        }
    }

    EigenSystem out;
    out.n_max = n_max;
    out.eigenvalues.assign(values.data(), values.data() + n_sites);
    out.transform.resize(n_sites);
    out.weights.resize(n_sites);
    for (int s = 0; s < n_sites; ++s) {
        out.transform[s].resize(n_sites);
        // Sign convention W_{s,0} > 0. The first eigenvector component of a
        // Jacobi matrix never vanishes; fall back to the first non-zero entry
        // if rounding produced an exact zero.
        double pivot = vectors(0, s);
        for (int n = 1; pivot == 0.0 && n < n_sites; ++n) pivot = vectors(n, s);
        const double sign = pivot < 0.0 ? -1.0 : 1.0;
        for (int n = 0; n < n_sites; ++n) {
            out.transform[s][n] = sign * vectors(n, s);
        }
        out.weights[s] = out.transform[s][0] * out.transform[s][0];
    }
    return out;
}

// Deterministic golden-section minimizer; shrinks [a, b] below tol_z.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol_z) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol_z) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

TransportEvent classify_at(const EigenSystem& system, double z, double thr) {
    std::vector<std::complex<double>> amp(system.sites());
    kernels::amplitudes_at(system, z, 0, amp.data());
    TransportEvent ev;
    ev.z = z;
    ev.end_p0 = std::norm(amp.front());
    ev.end_pn = std::norm(amp.back());
    ev.leakage = 0.0;
    for (int n = 1; n + 1 < system.sites(); ++n) ev.leakage += std::norm(amp[n]);
    ev.theta = std::atan2(std::abs(amp.back()), std::abs(amp.front()));
    // Phase per the end-site parametrization E_0 = e^{i phi} cos(theta),
    // E_N = i e^{i phi} sin(theta); when E_0 vanishes (pure PST) phi comes
    // from E_N instead.
    if (std::abs(amp.front()) > 1e-8) {
        ev.phi = std::arg(amp.front());
    } else {
        ev.phi = std::arg(amp.back()) - kPi / 2.0;
        if (ev.phi <= -kPi) ev.phi += 2.0 * kPi;
    }
    if (ev.end_pn >= 1.0 - thr) {
        ev.kind = EventKind::PST;
    } else if (ev.end_p0 >= 1.0 - thr) {
        ev.kind = EventKind::Return;
    } else {
        ev.kind = EventKind::FR;
    }
    return ev;
}

void push_deduped(std::vector<TransportEvent>& events, TransportEvent ev,
                  double z_resolution) {
    if (!events.empty() && std::abs(events.back().z - ev.z) <= z_resolution) {
        if (ev.leakage < events.back().leakage) events.back() = ev;
        return;
    }
    events.push_back(std::move(ev));
}

// N = 1 chains never leak, so leakage minima are meaningless; report only the
// extremal events: transfer maxima (PST) and return maxima.
std::vector<TransportEvent> detect_events_two_site(const EigenSystem& system,
                                                   double z_max, int grid,
                                                   double thr) {
    std::vector<double> zs(grid);
    for (int i = 0; i < grid; ++i) zs[i] = z_max * (i + 1) / grid;
    const auto pn = kernels::fidelity_scan_parallel(system, zs, 0);
    std::vector<double> p0(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) {
        p0[i] = kernels::return_probability_at(system, zs[i], 0);
    }

    std::vector<TransportEvent> events;
    const double z_res = std::max(1e-9, 1e-9 * z_max);
    auto scan_maxima = [&](const std::vector<double>& p, auto point_fn) {
        for (int i = 1; i < grid; ++i) {
            const bool interior =
                i + 1 < grid && p[i] >= p[i - 1] && p[i] >= p[i + 1];
            const bool right_edge = i + 1 == grid && p[i] >= p[i - 1];
            if (!interior && !right_edge) continue;
            if (p[i] < 1.0 - std::min(0.5, thr * 1e4)) continue;
            const double lo = zs[i - 1];
            const double hi = i + 1 < grid ? zs[i + 1] : z_max;
            const double z_star = golden_min(
                [&](double z) { return 1.0 - point_fn(system, z, 0); }, lo, hi,
                1e-10);
            TransportEvent ev = classify_at(system, z_star, thr);
            if (ev.kind != EventKind::FR) push_deduped(events, ev, z_res);
        }
    };
    scan_maxima(pn, kernels::fidelity_at);
    scan_maxima(p0, kernels::return_probability_at);
    std::sort(events.begin(), events.end(),
              [](const TransportEvent& a, const TransportEvent& b) {
                  return a.z < b.z;
              });
    // The sweep above can find the same z twice (once per metric); merge.
    std::vector<TransportEvent> merged;
    for (auto& ev : events) push_deduped(merged, ev, z_res);
    return merged;
}

}  // namespace

EigenSystem eigendecompose(const LatticeSpec& lattice) {
    lattice.validate();
    const int n_sites = lattice.sites();
    Eigen::VectorXd diag(n_sites);
    Eigen::VectorXd sub(n_sites - 1);
    for (int n = 0; n < n_sites; ++n) diag[n] = lattice.site_constants[n];
    for (int n = 0; n + 1 < n_sites; ++n) sub[n] = lattice.couplings[n];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw Error("tridiagonal eigendecomposition did not converge");
    }
    return finalize(solver.eigenvalues(), solver.eigenvectors(),
                    lattice.n_max);
}

EigenSystem eigendecompose(const PentadiagonalSpec& penta) {
    penta.validate();
    const int n_sites = penta.sites();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_sites, n_sites);
    for (int n = 0; n < n_sites; ++n) m(n, n) = penta.diag[n];
    for (int n = 0; n + 1 < n_sites; ++n) {
        m(n, n + 1) = m(n + 1, n) = penta.off1[n];
    }
    for (int n = 0; n + 2 < n_sites; ++n) {
        m(n, n + 2) = m(n + 2, n) = penta.off2[n];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error("dense eigendecomposition did not converge");
    }
    return finalize(solver.eigenvalues(), solver.eigenvectors(), penta.n_max);
}

AmplitudeField propagate(const EigenSystem& system, double z, int source) {
    if (source < 0 || source > system.n_max) {
        throw InvalidParams("source site out of range");
    }
    AmplitudeField field;
    field.z = z;
    field.amplitudes.resize(system.sites());
    kernels::amplitudes_at(system, z, source, field.amplitudes.data());
    return field;
}

double transfer_fidelity(const EigenSystem& system, double z) {
    return kernels::fidelity_at(system, z, 0);
}

std::vector<TransportEvent> detect_events(const EigenSystem& system,
                                          double z_max, int grid,
                                          double leakage_threshold) {
    if (grid < 2) throw InvalidParams("detect_events needs grid >= 2");
    if (!(z_max > 0.0)) throw InvalidParams("detect_events needs z_max > 0");

    if (system.n_max == 1) {
        return detect_events_two_site(system, z_max, grid, leakage_threshold);
    }

    std::vector<double> zs(grid);
    for (int i = 0; i < grid; ++i) zs[i] = z_max * (i + 1) / grid;
    const auto leak = kernels::leakage_scan_parallel(system, zs, 0);

    // Candidate minima are pre-filtered loosely; the refined minimum decides.
    const double cand_thr = std::min(0.5, leakage_threshold * 1e4);
    std::vector<TransportEvent> events;
    const double z_res = std::max(1e-9, 1e-9 * z_max);
    for (int i = 0; i < grid; ++i) {
        const bool interior = i > 0 && i + 1 < grid && leak[i] <= leak[i - 1] &&
                              leak[i] <= leak[i + 1];
        const bool right_edge = i + 1 == grid && i > 0 && leak[i] <= leak[i - 1];
        if (!interior && !right_edge) continue;
        if (leak[i] > cand_thr) continue;
        const double lo = zs[i - 1];
        const double hi = i + 1 < grid ? zs[i + 1] : z_max;
        const double z_star = golden_min(
            [&](double z) { return kernels::leakage_at(system, z, 0); }, lo,
            hi, 1e-10);
        TransportEvent ev = classify_at(system, z_star, leakage_threshold);
        if (ev.leakage <= leakage_threshold) push_deduped(events, ev, z_res);
    }
    return events;
}

bool verify_event(const EigenSystem& system,
                  const TransportPrediction& prediction, double tol) {
    if (prediction.kind == PredictionKind::None) return true;
    const TransportEvent ev = classify_at(system, prediction.distance, tol);
    if (ev.leakage > tol) return false;
    const double want = canonical_theta(prediction.mixing_angle);
    const double got = canonical_theta(ev.theta);
    return std::abs(want - got) <= std::sqrt(tol);
}

}  // namespace lforge
