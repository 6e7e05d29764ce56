#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "lforge/model_catalog.hpp"
#include "lforge/spectral_conditions.hpp"

using namespace lforge;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("rational reconstruction") {
    auto half = rationalize(0.5);
    REQUIRE(half.has_value());
    CHECK(half->first == 1);
    CHECK(half->second == 2);

    auto three_quarters = rationalize(0.75);
    REQUIRE(three_quarters.has_value());
    CHECK(three_quarters->first == 3);
    CHECK(three_quarters->second == 4);

    auto seven = rationalize(7.0);
    REQUIRE(seven.has_value());
    CHECK(seven->first == 7);
    CHECK(seven->second == 1);

    auto third = rationalize(1.0 / 3.0);
    REQUIRE(third.has_value());
    CHECK(third->first == 1);
    CHECK(third->second == 3);

    // sqrt(2) has no convergent with denominator <= 10 inside the tolerance
    CHECK_FALSE(rationalize(std::sqrt(2.0), 10, 1e-9).has_value());
}

TEST_CASE("pst admissibility") {
    SUBCASE("uniform gaps pass with unit multipliers") {
        auto pst = check_pst(Spectrum({-1.0, 0.0, 1.0}));
        REQUIRE(pst.has_value());
        CHECK(pst->z_pst == doctest::Approx(kPi));
        CHECK(pst->multipliers == std::vector<long long>{1, 1});
    }
    SUBCASE("scale shrinks the transfer distance") {
        auto pst = check_pst(Spectrum({-1.0, 0.0, 1.0}, 2.0));
        REQUIRE(pst.has_value());
        CHECK(pst->z_pst == doctest::Approx(kPi / 2.0));
    }
    SUBCASE("even gap ratio is rejected") {
        CHECK_FALSE(check_pst(Spectrum({0.0, 1.0, 3.0})).has_value());
    }
    SUBCASE("exponential lattice needs large odd multipliers") {
        ModelParams qr;
        qr.family = Family::QRacah;
        qr.n_max = 9;
        qr.big_k = 6;
        qr.beta = 0.5;
        auto pst = check_pst(spectrum(qr));
        REQUIRE(pst.has_value());
        CHECK(pst->z_pst == doctest::Approx(kPi / 2.0).epsilon(1e-12));
        const std::vector<long long> expected{577, 99, 17, 3, 1, 3, 17, 99, 577};
        CHECK(pst->multipliers == expected);
    }
    SUBCASE("quadratic lattice with half-integer offset") {
        ModelParams dh;
        dh.family = Family::DualHahn;
        dh.n_max = 6;
        dh.gamma = 0.5;
        auto pst = check_pst(spectrum(dh));
        REQUIRE(pst.has_value());
        CHECK(pst->z_pst == doctest::Approx(kPi));
        const std::vector<long long> expected{3, 5, 7, 9, 11, 13};
        CHECK(pst->multipliers == expected);
    }
}

TEST_CASE("revival enumeration for the {0,1,3} spectrum") {
    const std::vector<FrEvent> events = check_fr(Spectrum({0.0, 1.0, 3.0}),
                                                 1e-9, 7.0);
    REQUIRE(events.size() == 3);
    CHECK(events[0].z_fr == doctest::Approx(2.0 * kPi / 3.0));
    CHECK(events[0].theta == doctest::Approx(kPi / 3.0));
    CHECK(events[0].kind == EventKind::FR);
    CHECK(events[0].l0 == std::vector<long long>{1});
    CHECK(events[0].l1 == std::vector<long long>{0});

    CHECK(events[1].z_fr == doctest::Approx(4.0 * kPi / 3.0));
    CHECK(events[1].theta == doctest::Approx(kPi / 3.0));

    CHECK(events[2].z_fr == doctest::Approx(2.0 * kPi));
    CHECK(events[2].kind == EventKind::Return);
    CHECK(events[2].theta == doctest::Approx(0.0));
}

TEST_CASE("revival enumeration for the showcase exponential lattice") {
    ModelParams qr;
    qr.family = Family::QRacah;
    qr.n_max = 9;
    qr.big_k = 6;
    qr.beta = 0.5;
    const std::vector<FrEvent> events = check_fr(spectrum(qr), 1e-9, 4.0);
    REQUIRE(events.size() == 5);

    CHECK(events[0].z_fr == doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(events[0].kind == EventKind::FR);
    CHECK(events[0].theta == doctest::Approx(kPi / 4.0).epsilon(1e-9));
    CHECK(events[0].l0 == std::vector<long long>{25, 1, 1, 25});
    CHECK(events[0].l1 == std::vector<long long>{144, 4, 0, 4, 144});

    CHECK(events[1].z_fr == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(events[1].kind == EventKind::PST);

    CHECK(events[2].z_fr == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-12));
    CHECK(events[2].kind == EventKind::FR);
    CHECK(events[2].theta == doctest::Approx(kPi / 4.0).epsilon(1e-8));

    CHECK(events[3].z_fr == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(events[3].kind == EventKind::Return);

    CHECK(events[4].z_fr == doctest::Approx(5.0 * kPi / 4.0).epsilon(1e-12));
    CHECK(events[4].kind == EventKind::FR);
}

TEST_CASE("revival distances are shift invariant") {
    const std::vector<FrEvent> base = check_fr(Spectrum({0.0, 1.0, 3.0}),
                                               1e-9, 13.0);
    const std::vector<FrEvent> shifted = check_fr(Spectrum({10.0, 11.0, 13.0}),
                                                  1e-9, 13.0);
    REQUIRE(base.size() == shifted.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(shifted[i].z_fr == doctest::Approx(base[i].z_fr));
        CHECK(shifted[i].theta == doctest::Approx(base[i].theta));
        CHECK(shifted[i].kind == base[i].kind);
    }
}

TEST_CASE("two-level spectra list the quarter-period trio") {
    ConditionReport rep = analyze(Spectrum({-0.5, 0.5}));
    REQUIRE(rep.pst.has_value());
    CHECK(rep.pst->z_pst == doctest::Approx(kPi));
    REQUIRE(rep.fr.size() == 3);
    CHECK(rep.fr[0].z_fr == doctest::Approx(kPi / 2.0));
    CHECK(rep.fr[0].theta == doctest::Approx(kPi / 4.0));
    CHECK(rep.fr[0].kind == EventKind::FR);
    CHECK(rep.fr[1].z_fr == doctest::Approx(kPi));
    CHECK(rep.fr[1].kind == EventKind::PST);
    CHECK(rep.fr[2].z_fr == doctest::Approx(2.0 * kPi));
    CHECK(rep.fr[2].kind == EventKind::Return);
    CHECK(rep.notes.find("two-level") != std::string::npos);
}

TEST_CASE("pst check on the transformed next-to-nearest spectrum") {
    ModelParams kr;
    kr.family = Family::Krawtchouk;
    kr.n_max = 9;
    const Spectrum spec = spectrum(kr);

    auto pst = check_pst_nnn(spec, 1.0, 11.0);
    REQUIRE(pst.has_value());
    CHECK(pst->z_pst == doctest::Approx(kPi));
    const std::vector<long long> expected{3, 5, 7, 9, 11, 13, 15, 17, 19};
    CHECK(pst->multipliers == expected);

    // alpha*lambda^2 alone is not injective on a symmetric spectrum
    CHECK_FALSE(check_pst_nnn(spec, 1.0, 0.0).has_value());
}

TEST_CASE("finite-difference expansion in the binomial basis") {
    auto triangular = integer_valued_basis({0.0, 1.0, 3.0, 6.0});
    REQUIRE(triangular.has_value());
    CHECK(*triangular == std::vector<long long>{0, 1, 1, 0});

    auto constant = integer_valued_basis({7.0});
    REQUIRE(constant.has_value());
    CHECK(*constant == std::vector<long long>{7});

    auto flat = integer_valued_basis({2.0, 2.0, 2.0});
    REQUIRE(flat.has_value());
    CHECK(*flat == std::vector<long long>{2, 0, 0});

    CHECK_FALSE(integer_valued_basis({0.0, 0.5, 1.0}).has_value());
}

TEST_CASE("analysis report carries explanatory notes") {
    ConditionReport no_pst = analyze(Spectrum({0.0, 1.0, 3.0}), 1e-9, 7.0);
    CHECK_FALSE(no_pst.pst.has_value());
    CHECK(no_pst.notes.find("no perfect state transfer") != std::string::npos);

    ConditionReport with_pst = analyze(Spectrum({-1.0, 0.0, 1.0}), 1e-9, 7.0);
    REQUIRE(with_pst.pst.has_value());
    CHECK(with_pst.fr.size() >= 1);
}
