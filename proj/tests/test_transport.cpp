#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "lforge/errors.hpp"
#include "lforge/model_catalog.hpp"
#include "lforge/transport.hpp"

using namespace lforge;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd dense_from(const LatticeSpec& lattice) {
    const int n = lattice.sites();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = lattice.site_constants[i];
    for (int i = 0; i + 1 < n; ++i) {
        h(i, i + 1) = lattice.couplings[i];
        h(i + 1, i) = lattice.couplings[i];
    }
    return h;
}

// Independent propagation oracle: scaling-and-squaring Taylor series for
// exp(-i z H) applied to the source basis vector.
std::vector<std::complex<double>> expm_apply(const Eigen::MatrixXd& h, double z,
                                             int source) {
    const int n = static_cast<int>(h.rows());
    Eigen::MatrixXcd a = std::complex<double>(0.0, -z) * h;
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        a *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 1; i <= 30; ++i) {
        term = term * a / static_cast<double>(i);
        e += term;
    }
    for (int i = 0; i < squarings; ++i) e = e * e;
    std::vector<std::complex<double>> out(n);
    for (int i = 0; i < n; ++i) out[i] = e(i, source);
    return out;
}

LatticeSpec krawtchouk_lattice(int n_max) {
    ModelParams p;
    p.family = Family::Krawtchouk;
    p.n_max = n_max;
    return couplings(p);
}

LatticeSpec showcase_lattice() {
    ModelParams p;
    p.family = Family::QRacah;
    p.n_max = 9;
    p.big_k = 6;
    p.beta = 0.5;
    return couplings(p);
}

}  // namespace

TEST_CASE("eigendecomposition of the uniform-spectrum chain") {
    EigenSystem sys = eigendecompose(krawtchouk_lattice(4));
    REQUIRE(sys.sites() == 5);
    for (int s = 0; s <= 4; ++s) {
        CHECK(sys.eigenvalues[s] == doctest::Approx(s - 2.0).epsilon(1e-12));
    }
    // weights are the binomial distribution
    const double binom[] = {1.0, 4.0, 6.0, 4.0, 1.0};
    for (int s = 0; s <= 4; ++s) {
        CHECK(sys.weights[s] == doctest::Approx(binom[s] / 16.0));
        CHECK(sys.transform[s][0] > 0.0);  // sign fixing
    }
    // rows are orthonormal
    for (int a = 0; a <= 4; ++a) {
        for (int b = a; b <= 4; ++b) {
            double dot = 0.0;
            for (int n = 0; n <= 4; ++n) {
                dot += sys.transform[a][n] * sys.transform[b][n];
            }
            CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("eigenvector expansion rebuilds the matrix") {
    for (const LatticeSpec& lattice :
         {krawtchouk_lattice(6), showcase_lattice()}) {
        EigenSystem sys = eigendecompose(lattice);
        const int n = lattice.sites();
        const double scale =
            std::fabs(sys.eigenvalues.back()) + std::fabs(sys.eigenvalues[0]);
        Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(n, n);
        for (int s = 0; s < n; ++s) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    rebuilt(i, j) += sys.eigenvalues[s] * sys.transform[s][i] *
                                     sys.transform[s][j];
                }
            }
        }
        Eigen::MatrixXd direct = dense_from(lattice);
        CHECK((rebuilt - direct).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    }
}

TEST_CASE("degenerate spectra are rejected") {
    LatticeSpec clustered(2, {1e-13, 1e-13}, {0.0, 0.0, 1.0});
    CHECK_THROWS_AS(eigendecompose(clustered), DegenerateSpectrum);
}

TEST_CASE("propagation starts at the source and stays normalized") {
    EigenSystem sys = eigendecompose(showcase_lattice());
    AmplitudeField at0 = propagate(sys, 0.0);
    CHECK(std::abs(at0.amplitudes[0] - 1.0) < 1e-12);
    for (int n = 1; n <= 9; ++n) CHECK(std::abs(at0.amplitudes[n]) < 1e-12);

    for (double z : {0.1, 0.5, kPi / 4.0, 1.3, kPi / 2.0, 1.9}) {
        AmplitudeField field = propagate(sys, z);
        double total = 0.0;
        for (const auto& amp : field.amplitudes) total += std::norm(amp);
        CHECK(std::fabs(total - 1.0) <= 1e-10);
    }
}

TEST_CASE("linear chain transfers perfectly at z = pi") {
    EigenSystem sys = eigendecompose(krawtchouk_lattice(9));
    CHECK(std::fabs(transfer_fidelity(sys, kPi) - 1.0) <= 1e-8);
    CHECK(transfer_fidelity(sys, 0.0) == doctest::Approx(0.0));
    // perfect return at the doubled distance
    CHECK(transfer_fidelity(sys, 2.0 * kPi) <= 1e-8);
    AmplitudeField back = propagate(sys, 2.0 * kPi);
    CHECK(std::norm(back.amplitudes[0]) >= 1.0 - 1e-8);
}

TEST_CASE("eigen-expansion agrees with the matrix-exponential oracle") {
    for (const LatticeSpec& lattice :
         {krawtchouk_lattice(8), showcase_lattice()}) {
        EigenSystem sys = eigendecompose(lattice);
        Eigen::MatrixXd h = dense_from(lattice);
        for (double z : {0.3, 1.1, 2.0}) {
            AmplitudeField field = propagate(sys, z);
            const auto oracle = expm_apply(h, z, 0);
            for (std::size_t n = 0; n < oracle.size(); ++n) {
                CHECK(std::abs(field.amplitudes[n] - oracle[n]) <= 1e-9);
            }
        }
    }
}

TEST_CASE("event detection on the linear chain") {
    EigenSystem sys = eigendecompose(krawtchouk_lattice(5));
    const std::vector<TransportEvent> events =
        detect_events(sys, 7.0, 8192, 1e-6);
    REQUIRE(events.size() == 2);
    CHECK(events[0].kind == EventKind::PST);
    CHECK(events[0].z == doctest::Approx(kPi).epsilon(1e-8));
    CHECK(events[0].end_pn >= 1.0 - 1e-6);
    CHECK(events[1].kind == EventKind::Return);
    CHECK(events[1].z == doctest::Approx(2.0 * kPi).epsilon(1e-8));
    CHECK(events[1].end_p0 >= 1.0 - 1e-6);
}

TEST_CASE("event detection on the showcase exponential lattice") {
    EigenSystem sys = eigendecompose(showcase_lattice());
    const std::vector<TransportEvent> events =
        detect_events(sys, 2.0, 4096, 1e-6);
    REQUIRE(events.size() == 2);
    CHECK(events[0].kind == EventKind::FR);
    CHECK(events[0].z == doctest::Approx(kPi / 4.0).epsilon(1e-8));
    CHECK(events[0].theta == doctest::Approx(kPi / 4.0).epsilon(1e-6));
    CHECK(events[0].leakage <= 1e-6);
    CHECK(events[0].end_p0 == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(events[0].end_pn == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(events[1].kind == EventKind::PST);
    CHECK(events[1].z == doctest::Approx(kPi / 2.0).epsilon(1e-8));
    CHECK(events[1].end_pn >= 1.0 - 1e-6);
}

TEST_CASE("two-site chains report only the extremal events") {
    LatticeSpec two(1, {1.0}, {0.0, 0.0});
    EigenSystem sys = eigendecompose(two);
    const std::vector<TransportEvent> events =
        detect_events(sys, 2.0 * kPi, 4096, 1e-6);
    REQUIRE(!events.empty());
    CHECK(events[0].kind == EventKind::PST);
    CHECK(events[0].z == doctest::Approx(kPi / 2.0).epsilon(1e-8));
    for (const TransportEvent& ev : events) {
        CHECK((ev.kind == EventKind::PST || ev.kind == EventKind::Return));
    }
}

TEST_CASE("verify_event accepts true predictions and rejects fakes") {
    ModelParams pk;
    pk.family = Family::ParaKrawtchouk;
    pk.n_max = 3;
    pk.delta = 0.5;
    EigenSystem sys = eigendecompose(couplings(pk));

    TransportPrediction fr;
    fr.kind = PredictionKind::FR;
    fr.distance = kPi;
    fr.mixing_angle = kPi / 4.0;
    CHECK(verify_event(sys, fr, 1e-6));

    EigenSystem kraw = eigendecompose(krawtchouk_lattice(6));
    TransportPrediction fake;
    fake.kind = PredictionKind::FR;
    fake.distance = kPi / 2.0;
    fake.mixing_angle = kPi / 4.0;
    CHECK_FALSE(verify_event(kraw, fake, 1e-6));

    // self-consistency at a detected event
    const std::vector<TransportEvent> events =
        detect_events(kraw, 4.0, 8192, 1e-6);
    REQUIRE(!events.empty());
    TransportPrediction detected;
    detected.kind = PredictionKind::PST;
    detected.distance = events[0].z;
    detected.mixing_angle = events[0].theta;
    CHECK(verify_event(kraw, detected, 1e-6));
}
