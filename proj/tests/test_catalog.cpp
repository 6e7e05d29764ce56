#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lforge/errors.hpp"
#include "lforge/model_catalog.hpp"
#include "lforge/transport.hpp"

using namespace lforge;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("family names round-trip") {
    for (Family f : {Family::Krawtchouk, Family::ParaKrawtchouk,
                     Family::DualHahn, Family::QRacah, Family::ParaRacah}) {
        CHECK(family_from_string(to_string(f)) == f);
    }
    CHECK_THROWS_AS(family_from_string("hahn"), InvalidParams);
}

TEST_CASE("parameter validation messages") {
    ModelParams p;
    p.family = Family::ParaKrawtchouk;
    p.n_max = 4;
    p.delta = 2.5;
    CHECK_THROWS_WITH_AS(p.validate(), "delta out of (0,2)", InvalidParams);
    p.delta = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);

    p = ModelParams{};
    p.family = Family::QRacah;
    p.big_k = 2;
    CHECK_THROWS_WITH_AS(p.validate(), "K must be an integer greater than 2",
                         InvalidParams);

    p = ModelParams{};
    p.family = Family::DualHahn;
    p.gamma = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);

    p = ModelParams{};
    p.family = Family::ParaRacah;
    p.a = -0.75;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.a = 0.5;
    p.c = 0.25;  // violates |a| < c
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.c = 1.75;  // violates c < |a+1|
    CHECK_THROWS_AS(p.validate(), InvalidParams);

    p = ModelParams{};
    p.n_max = 0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p.n_max = 3;
    p.beta = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
}

TEST_CASE("closed-form spectra") {
    ModelParams p;
    p.family = Family::Krawtchouk;
    p.n_max = 2;
    Spectrum kr = spectrum(p);
    CHECK(kr.values == std::vector<double>{-1.0, 0.0, 1.0});

    p = ModelParams{};
    p.family = Family::ParaKrawtchouk;
    p.n_max = 3;
    p.delta = 0.5;
    Spectrum pk = spectrum(p);
    REQUIRE(pk.values.size() == 4);
    CHECK(pk.values[0] == doctest::Approx(-1.25));
    CHECK(pk.values[1] == doctest::Approx(-0.75));
    CHECK(pk.values[2] == doctest::Approx(0.75));
    CHECK(pk.values[3] == doctest::Approx(1.25));

    p = ModelParams{};
    p.family = Family::QRacah;
    p.n_max = 1;
    p.big_k = 6;
    Spectrum qr = spectrum(p);
    CHECK(std::fabs(qr.values[0] + 2.0) < 1e-12);
    CHECK(std::fabs(qr.values[1] - 2.0) < 1e-12);

    p = ModelParams{};
    p.family = Family::DualHahn;
    p.n_max = 1;
    p.gamma = 0.5;
    Spectrum dh = spectrum(p);
    CHECK(dh.values[0] == doctest::Approx(0.0));
    CHECK(dh.values[1] == doctest::Approx(3.0));

    p = ModelParams{};
    p.family = Family::ParaRacah;
    p.n_max = 7;
    p.a = 0.25;
    p.c = 0.75;
    Spectrum pr = spectrum(p);
    const std::vector<double> expected{0.0625, 0.5625, 1.5625,  3.0625,
                                       5.0625, 7.5625, 10.5625, 14.0625};
    REQUIRE(pr.values.size() == expected.size());
    for (std::size_t s = 0; s < expected.size(); ++s) {
        CHECK(pr.values[s] == doctest::Approx(expected[s]).epsilon(1e-14));
    }
}

TEST_CASE("closed-form couplings") {
    ModelParams p;
    p.family = Family::Krawtchouk;
    p.n_max = 2;
    LatticeSpec kr = couplings(p);
    CHECK(kr.couplings[0] == doctest::Approx(std::sqrt(0.5)));
    CHECK(kr.couplings[1] == doctest::Approx(std::sqrt(0.5)));
    for (double b : kr.site_constants) CHECK(b == 0.0);
    CHECK(kr.meta.at("family") == "krawtchouk");

    p = ModelParams{};
    p.family = Family::DualHahn;
    p.n_max = 1;
    p.gamma = 0.5;
    LatticeSpec dh = couplings(p);
    CHECK(dh.couplings[0] == doctest::Approx(1.5));
    CHECK(dh.site_constants[0] == doctest::Approx(1.5));
    CHECK(dh.site_constants[1] == doctest::Approx(1.5));

    p = ModelParams{};
    p.family = Family::ParaRacah;
    p.n_max = 7;
    p.a = 0.25;
    p.c = 0.75;
    LatticeSpec pr = couplings(p);
    const std::vector<double> expected_j{1.75, 3.0, 3.75, 4.0, 3.75, 3.0, 1.75};
    REQUIRE(pr.couplings.size() == expected_j.size());
    for (std::size_t n = 0; n < expected_j.size(); ++n) {
        CHECK(pr.couplings[n] == doctest::Approx(expected_j[n]).epsilon(1e-12));
    }
    CHECK(pr.site_constants[0] == doctest::Approx(1.8125));
    CHECK(pr.site_constants[3] == doctest::Approx(7.8125));
}

TEST_CASE("para-Krawtchouk reduces to Krawtchouk at delta = 1") {
    for (int n : {5, 6}) {
        ModelParams pk;
        pk.family = Family::ParaKrawtchouk;
        pk.n_max = n;
        pk.delta = 1.0;
        pk.beta = 1.25;
        ModelParams kr = pk;
        kr.family = Family::Krawtchouk;
        LatticeSpec a = couplings(pk);
        LatticeSpec b = couplings(kr);
        for (std::size_t i = 0; i < a.couplings.size(); ++i) {
            CHECK(a.couplings[i] ==
                  doctest::Approx(b.couplings[i]).epsilon(1e-13));
        }
        for (std::size_t i = 0; i < a.site_constants.size(); ++i) {
            CHECK(std::fabs(a.site_constants[i] - b.site_constants[i]) <=
                  1e-13);
        }
    }
}

TEST_CASE("exponential lattice approaches the linear one as q tends to 1") {
    const double q = 0.999;
    const int n = 10;
    Spectrum qr = q_racah_spectrum_from_q(q, n, 1.0);
    const double rescale = -1.0 / (q - 1.0 / q);
    ModelParams kr;
    kr.family = Family::Krawtchouk;
    kr.n_max = n;
    Spectrum lin = spectrum(kr);
    for (int s = 0; s <= n; ++s) {
        CHECK(std::fabs(qr.values[s] * rescale - lin.values[s]) < 1e-3);
    }
    CHECK_THROWS_AS(q_racah_spectrum_from_q(1.0, 5, 1.0), InvalidParams);
}

TEST_CASE("all families are mirror symmetric") {
    std::vector<ModelParams> cases;
    ModelParams p;
    p.family = Family::Krawtchouk;
    p.n_max = 9;
    cases.push_back(p);
    p = ModelParams{};
    p.family = Family::ParaKrawtchouk;
    p.n_max = 8;
    p.delta = 0.6;
    cases.push_back(p);
    p.n_max = 7;
    cases.push_back(p);
    p = ModelParams{};
    p.family = Family::DualHahn;
    p.n_max = 8;
    p.gamma = 0.7;
    cases.push_back(p);
    p = ModelParams{};
    p.family = Family::QRacah;
    p.n_max = 9;
    p.big_k = 6;
    p.beta = 0.5;
    cases.push_back(p);
    p = ModelParams{};
    p.family = Family::ParaRacah;
    p.n_max = 7;
    p.a = 0.25;
    p.c = 0.75;
    cases.push_back(p);
    p.n_max = 6;
    cases.push_back(p);

    for (const ModelParams& params : cases) {
        LatticeSpec lattice = couplings(params);
        CHECK(mirror_defect(lattice) <= 1e-12 * (1.0 + lattice.couplings[0]));
        CHECK(validate_mirror_symmetry(lattice,
                                       1e-11 * (1.0 + lattice.couplings[0])));
    }
}

TEST_CASE("closed-form eigenvalues match the closed-form spectrum") {
    std::vector<ModelParams> cases;
    ModelParams p;
    p.family = Family::Krawtchouk;
    p.n_max = 10;
    cases.push_back(p);
    p = ModelParams{};
    p.family = Family::ParaKrawtchouk;
    p.n_max = 9;
    p.delta = 0.3;
    cases.push_back(p);
    p = ModelParams{};
    p.family = Family::DualHahn;
    p.n_max = 9;
    p.gamma = 0.5;
    p.beta = 2.0;
    cases.push_back(p);
    p = ModelParams{};
    p.family = Family::QRacah;
    p.n_max = 9;
    p.big_k = 6;
    p.beta = 0.5;
    cases.push_back(p);
    p = ModelParams{};
    p.family = Family::ParaRacah;
    p.n_max = 7;
    p.a = 0.25;
    p.c = 0.75;
    cases.push_back(p);

    for (const ModelParams& params : cases) {
        const std::vector<double> target = spectrum(params).physical();
        EigenSystem eig = eigendecompose(couplings(params));
        const double spread = target.back() - target.front();
        for (std::size_t s = 0; s < target.size(); ++s) {
            CHECK(std::fabs(eig.eigenvalues[s] - target[s]) <= 1e-8 * spread);
        }
    }
}

TEST_CASE("transport predictions: linear lattice") {
    ModelParams p;
    p.family = Family::Krawtchouk;
    p.n_max = 9;
    const std::vector<TransportPrediction> pred = predict_transport(p);
    REQUIRE(pred.size() == 4);
    CHECK(pred[0].kind == PredictionKind::PST);
    CHECK(pred[0].distance == doctest::Approx(kPi));
    CHECK(pred[0].mixing_angle == doctest::Approx(kPi / 2.0));
    CHECK(pred[1].distance == doctest::Approx(3.0 * kPi));
    CHECK(pred[2].distance == doctest::Approx(5.0 * kPi));
    CHECK(pred[3].kind == PredictionKind::None);
    CHECK(pred[3].constraint_note.find("no genuine fractional revival") !=
          std::string::npos);
}

TEST_CASE("transport predictions: bi-lattice") {
    ModelParams p;
    p.family = Family::ParaKrawtchouk;
    p.n_max = 4;
    p.delta = 0.6;
    const std::vector<TransportPrediction> pred = predict_transport(p);
    REQUIRE(pred.size() >= 2);
    CHECK(pred[0].kind == PredictionKind::FR);
    CHECK(pred[0].distance == doctest::Approx(kPi));
    CHECK(pred[0].mixing_angle == doctest::Approx(0.3 * kPi));
    bool found_pst = false;
    for (const TransportPrediction& t : pred) {
        if (t.kind == PredictionKind::PST) {
            CHECK(t.distance == doctest::Approx(5.0 * kPi));
            found_pst = true;
        }
    }
    CHECK(found_pst);
}

TEST_CASE("transport predictions: quadratic lattice") {
    ModelParams p;
    p.family = Family::DualHahn;
    p.n_max = 6;
    p.gamma = 0.5;
    const std::vector<TransportPrediction> pred = predict_transport(p);
    REQUIRE(pred.size() == 3);
    CHECK(pred[0].kind == PredictionKind::FR);
    CHECK(pred[0].distance == doctest::Approx(kPi / 2.0));
    CHECK(pred[0].mixing_angle == doctest::Approx(kPi / 4.0));
    CHECK(pred[1].kind == PredictionKind::PST);
    CHECK(pred[1].distance == doctest::Approx(kPi));
    CHECK(pred[2].kind == PredictionKind::FR);
    CHECK(pred[2].distance == doctest::Approx(3.0 * kPi / 2.0));
}

TEST_CASE("transport predictions: exponential lattice") {
    ModelParams p;
    p.family = Family::QRacah;
    p.n_max = 9;
    p.big_k = 6;
    p.beta = 0.5;
    const std::vector<TransportPrediction> pred = predict_transport(p);
    REQUIRE(pred.size() == 3);
    CHECK(pred[0].kind == PredictionKind::FR);
    CHECK(pred[0].distance == doctest::Approx(kPi / 4.0));
    CHECK(pred[0].mixing_angle == doctest::Approx(kPi / 4.0));
    CHECK(pred[1].kind == PredictionKind::PST);
    CHECK(pred[1].distance == doctest::Approx(kPi / 2.0));
    CHECK(pred[2].kind == PredictionKind::FR);
    CHECK(pred[2].distance == doctest::Approx(3.0 * kPi / 4.0));

    // even chains collapse every admissible angle onto a transfer or return
    ModelParams even = p;
    even.n_max = 8;
    even.beta = 1.0;
    const std::vector<TransportPrediction> pe = predict_transport(even);
    REQUIRE(!pe.empty());
    bool has_note = false;
    for (const TransportPrediction& t : pe) {
        if (t.kind == PredictionKind::FR) FAIL("unexpected genuine revival");
        if (t.kind == PredictionKind::None &&
            t.constraint_note.find("N even") != std::string::npos) {
            has_note = true;
        }
    }
    CHECK(has_note);
}

TEST_CASE("transport predictions: quadratic bi-lattice") {
    ModelParams p;
    p.family = Family::ParaRacah;
    p.n_max = 7;
    p.a = 0.5;
    p.c = 1.0;
    const std::vector<TransportPrediction> pred = predict_transport(p);
    REQUIRE(pred.size() == 3);
    CHECK(pred[0].kind == PredictionKind::FR);
    CHECK(pred[0].distance == doctest::Approx(2.0 * kPi));
    CHECK(pred[0].mixing_angle == doctest::Approx(kPi / 4.0));
    CHECK(pred[1].kind == PredictionKind::PST);
    CHECK(pred[1].distance == doctest::Approx(4.0 * kPi));

    // quarter-offset pair admits neither transfer nor genuine revival
    ModelParams quiet = p;
    quiet.a = 0.25;
    quiet.c = 0.75;
    const std::vector<TransportPrediction> pq = predict_transport(quiet);
    REQUIRE(pq.size() == 1);
    CHECK(pq[0].kind == PredictionKind::None);
}

TEST_CASE("transport predictions: next-to-nearest model") {
    const std::vector<TransportPrediction> pred =
        nnn_krawtchouk_prediction(9, 1.0, 11.0);
    REQUIRE(pred.size() == 3);
    CHECK(pred[0].kind == PredictionKind::FR);
    CHECK(pred[0].distance == doctest::Approx(kPi / 2.0));
    CHECK(pred[0].mixing_angle == doctest::Approx(kPi / 4.0));
    CHECK(pred[1].kind == PredictionKind::PST);
    CHECK(pred[1].distance == doctest::Approx(kPi));
    CHECK(pred[2].kind == PredictionKind::FR);
    CHECK(pred[2].distance == doctest::Approx(3.0 * kPi / 2.0));

    const std::vector<TransportPrediction> small =
        nnn_krawtchouk_prediction(2, 1.0, 4.0);
    REQUIRE(small.size() == 3);
    CHECK(small[0].kind == PredictionKind::FR);
    CHECK(small[0].distance == doctest::Approx(kPi / 2.0));
    CHECK(small[1].kind == PredictionKind::PST);
    CHECK(small[1].distance == doctest::Approx(kPi));
}

TEST_CASE("next-to-nearest model reduces to the linear one at alpha = 0") {
    const std::vector<TransportPrediction> nnn =
        nnn_krawtchouk_prediction(5, 0.0, 1.0);
    ModelParams kr;
    kr.family = Family::Krawtchouk;
    kr.n_max = 5;
    const std::vector<TransportPrediction> base = predict_transport(kr);
    REQUIRE(nnn.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(nnn[i].kind == base[i].kind);
        CHECK(nnn[i].distance == doctest::Approx(base[i].distance));
        CHECK(nnn[i].mixing_angle == doctest::Approx(base[i].mixing_angle));
    }
}

TEST_CASE("meta block carries the design parameters") {
    ModelParams p;
    p.family = Family::QRacah;
    p.n_max = 9;
    p.big_k = 6;
    p.beta = 0.5;
    LatticeSpec lattice = couplings(p);
    CHECK(lattice.meta.at("family") == "q_racah");
    CHECK(lattice.meta.at("beta") == "0.5");
    CHECK(lattice.meta.at("big_k") == "6");
}
