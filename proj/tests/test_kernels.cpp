#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "lforge/kernels.hpp"
#include "lforge/model_catalog.hpp"
#include "lforge/transport.hpp"

using namespace lforge;

namespace {

EigenSystem showcase_system() {
    ModelParams p;
    p.family = Family::QRacah;
    p.n_max = 9;
    p.big_k = 6;
    p.beta = 0.5;
    return eigendecompose(couplings(p));
}

std::vector<double> grid(double z_max, int points) {
    std::vector<double> zs(points);
    for (int i = 0; i < points; ++i) zs[i] = z_max * (i + 1) / points;
    return zs;
}

}  // namespace

TEST_CASE("thread count respects the environment cap") {
    CHECK(kernels::effective_threads() >= 1);
    setenv("LATTICE_FORGE_THREADS", "1", 1);
    CHECK(kernels::effective_threads() == 1);
    unsetenv("LATTICE_FORGE_THREADS");
}

TEST_CASE("serial and parallel scans are bit identical") {
    const EigenSystem sys = showcase_system();
    const std::vector<double> zs = grid(2.0, 777);

    const std::vector<double> leak_s =
        kernels::leakage_scan_serial(sys, zs, 0);
    const std::vector<double> leak_p =
        kernels::leakage_scan_parallel(sys, zs, 0);
    REQUIRE(leak_s.size() == leak_p.size());
    for (std::size_t i = 0; i < leak_s.size(); ++i) {
        CHECK(leak_s[i] == leak_p[i]);
    }

    const std::vector<double> fid_s =
        kernels::fidelity_scan_serial(sys, zs, 0);
    const std::vector<double> fid_p =
        kernels::fidelity_scan_parallel(sys, zs, 0);
    for (std::size_t i = 0; i < fid_s.size(); ++i) {
        CHECK(fid_s[i] == fid_p[i]);
    }

    const auto trace_s = kernels::trace_scan_serial(sys, zs, 0);
    const auto trace_p = kernels::trace_scan_parallel(sys, zs, 0);
    REQUIRE(trace_s.size() == trace_p.size());
    for (std::size_t i = 0; i < trace_s.size(); ++i) {
        for (std::size_t n = 0; n < trace_s[i].size(); ++n) {
            CHECK(trace_s[i][n].real() == trace_p[i][n].real());
            CHECK(trace_s[i][n].imag() == trace_p[i][n].imag());
        }
    }
}

TEST_CASE("point kernels agree with the propagation front end") {
    const EigenSystem sys = showcase_system();
    for (double z : {0.25, 0.7853981633974483, 1.5}) {
        const AmplitudeField field = propagate(sys, z);
        double leak = 0.0;
        for (int n = 1; n < sys.n_max; ++n) {
            leak += std::norm(field.amplitudes[n]);
        }
        CHECK(kernels::leakage_at(sys, z, 0) == doctest::Approx(leak));
        CHECK(kernels::fidelity_at(sys, z, 0) ==
              doctest::Approx(std::norm(field.amplitudes[sys.n_max])));
        CHECK(kernels::return_probability_at(sys, z, 0) ==
              doctest::Approx(std::norm(field.amplitudes[0])));
    }
}
