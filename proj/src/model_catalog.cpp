#include "lforge/model_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lforge/errors.hpp"
#include "lforge/spectral_conditions.hpp"

namespace lforge {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double fold_zero_two_pi(double x) {
    double r = std::fmod(x, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r;
}

double fold_signed_pi(double x) {
    double r = fold_zero_two_pi(x);
    if (r > kPi) r -= 2.0 * kPi;
    return r;
}

// Labeled event at distance z, derived from the congruence remainder of the
// first gap; nullopt when the distance is a plain return to the source.
std::optional<TransportPrediction> event_at(const Spectrum& spec, double z,
                                            std::string note) {
    const std::vector<double> phys = spec.physical();
    const int n = spec.n_max();
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    const double gap0 = phys[1] - phys[0];
    double rem = fold_zero_two_pi(z * gap0);
    if (rem > kPi) rem -= 2.0 * kPi;
    const double theta_raw = parity * rem / 2.0;
    const double theta = std::fabs(theta_raw);
    if (theta <= 1e-9) return std::nullopt;

    TransportPrediction pred;
    pred.distance = z;
    pred.phase = fold_signed_pi(-z * phys.back() - theta_raw);
    pred.constraint_note = std::move(note);
    if (kPi / 2.0 - theta <= 1e-9) {
        pred.kind = PredictionKind::PST;
        pred.mixing_angle = kPi / 2.0;
    } else {
        pred.kind = PredictionKind::FR;
        pred.mixing_angle = theta;
    }
    return pred;
}

TransportPrediction none_entry(std::string note) {
    TransportPrediction pred;
    pred.kind = PredictionKind::None;
    pred.constraint_note = std::move(note);
    return pred;
}

void sort_predictions(std::vector<TransportPrediction>& predictions) {
    std::stable_sort(predictions.begin(), predictions.end(),
                     [](const TransportPrediction& x, const TransportPrediction& y) {
                         const bool x_none = x.kind == PredictionKind::None;
                         const bool y_none = y.kind == PredictionKind::None;
                         if (x_none != y_none) return y_none;
                         return x.distance < y.distance;
                     });
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
        case Family::Krawtchouk: return "krawtchouk";
        case Family::ParaKrawtchouk: return "para_krawtchouk";
        case Family::DualHahn: return "dual_hahn";
        case Family::QRacah: return "q_racah";
        case Family::ParaRacah: return "para_racah";
    }
    throw InvalidParams("unhandled family enumerator");
}

Family family_from_string(const std::string& name) {
    if (name == "krawtchouk") return Family::Krawtchouk;
    if (name == "para_krawtchouk") return Family::ParaKrawtchouk;
    if (name == "dual_hahn") return Family::DualHahn;
    if (name == "q_racah") return Family::QRacah;
    if (name == "para_racah") return Family::ParaRacah;
    throw InvalidParams("unknown family '" + name + "'");
}

int ModelParams::resolved_j_split() const {
    if (j_split >= 0) return j_split;
    return (n_max % 2 == 1) ? (n_max - 1) / 2 : n_max / 2;
}

void ModelParams::validate() const {
    if (n_max < 1) throw InvalidParams("n_max must be at least 1");
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidParams("beta must be positive and finite");
    }
    switch (family) {
        case Family::Krawtchouk:
            break;
        case Family::ParaKrawtchouk:
            if (!(delta > 0.0 && delta < 2.0)) {
                throw InvalidParams("delta out of (0,2)");
            }
            break;
        case Family::DualHahn:
            if (!(gamma > -1.0)) throw InvalidParams("gamma must exceed -1");
            break;
        case Family::QRacah:
            if (big_k <= 2) {
                throw InvalidParams("K must be an integer greater than 2");
            }
            break;
        case Family::ParaRacah:
            if (!(a > -0.5)) throw InvalidParams("a must exceed -1/2");
            if (!(std::fabs(a) < c && c < std::fabs(a + 1.0))) {
                throw InvalidParams("c must satisfy |a| < c < |a+1|");
            }
            break;
    }
}

Spectrum q_racah_spectrum_from_q(double q, int n_max, double beta) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidParams("q must lie in (0, 1)");
    if (n_max < 1) throw InvalidParams("n_max must be at least 1");
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidParams("beta must be positive and finite");
    }
    std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
    for (int s = 0; s <= n_max; ++s) {
        values[static_cast<std::size_t>(s)] =
            std::pow(q, n_max / 2.0 - s) - std::pow(q, s - n_max / 2.0);
    }
    Spectrum out;
    out.values = std::move(values);
    out.scale = beta;
    out.validate();
    return out;
}

Spectrum spectrum(const ModelParams& params) {
    params.validate();
    const int n = params.n_max;
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    switch (params.family) {
        case Family::Krawtchouk:
            for (int s = 0; s <= n; ++s) {
                values[static_cast<std::size_t>(s)] = s - n / 2.0;
            }
            break;
        case Family::ParaKrawtchouk:
            for (int s = 0; s <= n; ++s) {
                values[static_cast<std::size_t>(s)] =
                    s - (n - 1 + params.delta) / 2.0 +
                    ((s % 2 == 1) ? params.delta - 1.0 : 0.0);
            }
            break;
        case Family::DualHahn:
            for (int s = 0; s <= n; ++s) {
                values[static_cast<std::size_t>(s)] =
                    s * (s + 2.0 * params.gamma + 1.0);
            }
            break;
        case Family::QRacah: {
            const double k = params.big_k;
            const double q = k / 2.0 - std::sqrt(k * k / 4.0 - 1.0);
            return q_racah_spectrum_from_q(q, n, params.beta);
        }
        case Family::ParaRacah:
            for (int idx = 0; idx <= n; ++idx) {
                const double s = idx / 2;
                const double base = (idx % 2 == 0) ? s + params.a : s + params.c;
                values[static_cast<std::size_t>(idx)] = base * base;
            }
            break;
    }
    Spectrum out;
    out.values = std::move(values);
    out.scale = params.beta;
    out.validate();
    return out;
}

LatticeSpec couplings(const ModelParams& params) {
    params.validate();
    const int n_max = params.n_max;
    const double beta = params.beta;
    std::vector<double> j(static_cast<std::size_t>(n_max));
    std::vector<double> b(static_cast<std::size_t>(n_max) + 1, 0.0);

    const auto guarded_sqrt = [&](double radicand, int n) {
        if (radicand < 0.0) {
            throw UnsupportedParamRegion(
                "coupling " + std::to_string(n) + " of family " +
                to_string(params.family) + " has negative radicand " +
                fmt(radicand));
        }
        return std::sqrt(radicand);
    };

    switch (params.family) {
        case Family::Krawtchouk:
            for (int n = 1; n <= n_max; ++n) {
                j[static_cast<std::size_t>(n) - 1] =
                    beta / 2.0 * std::sqrt(n * (n_max - n + 1.0));
            }
            break;
        case Family::ParaKrawtchouk: {
            const double d = params.delta;
            if (n_max % 2 == 1) {
                for (int n = 1; n <= n_max; ++n) {
                    const double top = (n_max + 1.0 - 2.0 * n);
                    const double radicand = n * (n_max + 1.0 - n) *
                                            (top * top - d * d) /
                                            ((n_max - 2.0 * n) *
                                             (n_max - 2.0 * n + 2.0));
                    j[static_cast<std::size_t>(n) - 1] =
                        beta / 2.0 * guarded_sqrt(radicand, n);
                }
            } else {
                for (int n = 1; n <= n_max; ++n) {
                    const double mid = 2.0 * n - n_max - 1.0;
                    const double radicand =
                        n * (n_max + 1.0 - n) *
                        (mid * mid - (d - 1.0) * (d - 1.0)) / (mid * mid);
                    j[static_cast<std::size_t>(n) - 1] =
                        beta / 2.0 * guarded_sqrt(radicand, n);
                }
                for (int k = 0; k <= n_max; ++k) {
                    b[static_cast<std::size_t>(k)] =
                        beta * (d - 1.0) * (n_max + 1.0) / 4.0 *
                        (1.0 / (2.0 * k - n_max - 1.0) -
                         1.0 / (2.0 * k + 1.0 - n_max));
                }
            }
            break;
        }
        case Family::DualHahn: {
            const double g = params.gamma;
            for (int n = 1; n <= n_max; ++n) {
                j[static_cast<std::size_t>(n) - 1] =
                    beta * guarded_sqrt(n * (n_max + 1.0 - n) * (g + n) *
                                            (g + n_max + 1.0 - n),
                                        n);
            }
            for (int k = 0; k <= n_max; ++k) {
                b[static_cast<std::size_t>(k)] =
                    beta * (2.0 * k * (n_max - k) + (g + 1.0) * n_max);
            }
            break;
        }
        case Family::QRacah: {
            const double kk = params.big_k;
            const double q = kk / 2.0 - std::sqrt(kk * kk / 4.0 - 1.0);
            for (int n = 1; n <= n_max; ++n) {
                const double radicand =
                    (1.0 - std::pow(q, 2.0 * n)) *
                    (std::pow(q, 2.0 * (n - n_max - 1.0)) - 1.0) /
                    ((1.0 + std::pow(q, 2.0 * n - n_max - 2.0)) *
                     (1.0 + std::pow(q, 2.0 * n - n_max)));
                j[static_cast<std::size_t>(n) - 1] = beta * guarded_sqrt(radicand, n);
            }
            break;
        }
        case Family::ParaRacah: {
            const double a = params.a;
            const double c = params.c;
            const int js = params.resolved_j_split();
            if (n_max % 2 == 1) {
                for (int n = 1; n <= n_max; ++n) {
                    const double split = n - js - 1.0;
                    const double num = n * (n_max + 1.0 - n) *
                                       (n_max - n + a + c) * (n - 1.0 + a + c) *
                                       (split * split - (a - c) * (a - c));
                    const double radicand =
                        num / (4.0 * (n_max - 2.0 * n) * (n_max - 2.0 * n + 2.0));
                    j[static_cast<std::size_t>(n) - 1] =
                        beta * guarded_sqrt(radicand, n);
                }
                for (int k = 0; k <= n_max; ++k) {
                    b[static_cast<std::size_t>(k)] =
                        beta * 0.5 *
                        (a * (a + js) + c * (c + js) + k * (n_max - k * 1.0));
                }
            } else {
                for (int n = 1; n <= n_max; ++n) {
                    const double num = n * (n_max + 1.0 - n) * (n - 1.0 + a + c) *
                                       (n_max - n + a + c) * (n - js + a - c) *
                                       (n - js + c - a - 1.0);
                    const double den = n_max - 2.0 * n + 1.0;
                    j[static_cast<std::size_t>(n) - 1] =
                        beta * guarded_sqrt(num / (4.0 * den * den), n);
                }
                for (int k = 0; k <= n_max; ++k) {
                    b[static_cast<std::size_t>(k)] =
                        beta *
                        (0.5 * (a * a + c * c + k - k * k * 1.0) +
                         0.25 * (2.0 * k + a + c) * (n_max - 1.0) +
                         (k + 1.0) * (k + a + c) * (1.0 + 2.0 * a - 2.0 * c) /
                             (4.0 * (1.0 + 2.0 * k - n_max)) +
                         k * (k - 1.0 + a + c) * (1.0 + 2.0 * a - 2.0 * c) /
                             (4.0 * (1.0 - 2.0 * k + n_max)));
                }
            }
            break;
        }
    }

    LatticeSpec out;
    out.n_max = n_max;
    out.couplings = std::move(j);
    out.site_constants = std::move(b);
    out.meta["family"] = to_string(params.family);
    out.meta["beta"] = fmt(beta);
    switch (params.family) {
        case Family::Krawtchouk:
            break;
        case Family::ParaKrawtchouk:
            out.meta["delta"] = fmt(params.delta);
            break;
        case Family::DualHahn:
            out.meta["gamma"] = fmt(params.gamma);
            break;
        case Family::QRacah:
            out.meta["big_k"] = std::to_string(params.big_k);
            break;
        case Family::ParaRacah:
            out.meta["a"] = fmt(params.a);
            out.meta["c"] = fmt(params.c);
            out.meta["j_split"] = std::to_string(params.resolved_j_split());
            break;
    }
    out.validate();
    return out;
}

namespace {

std::vector<TransportPrediction> predict_generic(const ModelParams& params,
                                                 const Spectrum& spec) {
    std::vector<TransportPrediction> out;
    const auto pst = check_pst(spec);
    const auto revivals = check_fr(spec);

    int emitted = 0;
    bool have_pst = false;
    for (const FrEvent& event : revivals) {
        if (event.kind == EventKind::Return) continue;
        if (emitted >= 3) break;
        TransportPrediction pred;
        pred.distance = event.z_fr;
        pred.phase = event.phi;
        if (event.kind == EventKind::PST) {
            pred.kind = PredictionKind::PST;
            pred.mixing_angle = kPi / 2.0;
            have_pst = true;
        } else {
            pred.kind = PredictionKind::FR;
            pred.mixing_angle = event.theta;
        }
        pred.constraint_note = "congruence-certified event";
        out.push_back(pred);
        ++emitted;
    }
    if (!have_pst && pst) {
        auto e = event_at(spec, pst->z_pst, "minimal perfect transfer distance");
        if (e) out.push_back(*e);
    }
    if (!pst) {
        out.push_back(none_entry(
            "no perfect transfer: gaps are incommensurate or some reduced "
            "multiplier is even"));
    }
    if (params.family == Family::QRacah && params.n_max % 2 == 0) {
        out.push_back(none_entry(
            "N even: mixing angles collapse to multiples of pi/2, so only "
            "perfect transfer (no genuine revival) can occur"));
    }
    if (params.family == Family::ParaRacah && out.empty()) {
        out.push_back(none_entry(
            "no commensurate revival structure detected; a and c must be "
            "rational for revivals"));
    }
    return out;
}

}  // namespace

std::vector<TransportPrediction> predict_transport(const ModelParams& params) {
    params.validate();
    const Spectrum spec = spectrum(params);
    std::vector<TransportPrediction> out;

    switch (params.family) {
        case Family::Krawtchouk: {
            for (int q : {1, 3, 5}) {
                auto e = event_at(spec, kPi * q / params.beta,
                                  "perfect transfer at odd multiple " +
                                      std::to_string(q) + " of pi/beta");
                if (e) out.push_back(*e);
            }
            out.push_back(none_entry(
                "no genuine fractional revival: the linear spectrum only "
                "admits mixing angles that are multiples of pi/2"));
            break;
        }
        case Family::ParaKrawtchouk: {
            const auto pq = rationalize(params.delta);
            if (!pq) {
                out.push_back(none_entry(
                    "delta is not recognized as a rational p/q (max "
                    "denominator 1e6): no revival distance detected"));
                break;
            }
            const long long p = pq->first;
            const long long qd = pq->second;
            int emitted = 0;
            for (int m = 1; m <= 16 && emitted < 3; ++m) {
                auto e = event_at(spec, kPi * m / params.beta,
                                  "revival multiple m = " + std::to_string(m));
                if (e) {
                    out.push_back(*e);
                    ++emitted;
                }
            }
            if (p % 2 != 0) {
                if (qd > 3) {
                    auto e = event_at(
                        spec, kPi * static_cast<double>(qd) / params.beta,
                        "minimal perfect transfer at m = " +
                            std::to_string(qd) + " for delta = " +
                            std::to_string(p) + "/" + std::to_string(qd));
                    if (e) out.push_back(*e);
                }
            } else {
                out.push_back(none_entry(
                    "delta = " + std::to_string(p) + "/" + std::to_string(qd) +
                    " has an even numerator: no perfect transfer distance "
                    "exists"));
            }
            break;
        }
        case Family::DualHahn: {
            const double r = 2.0 * params.gamma + 1.0;
            long long k_step = 1;
            if (std::fabs(r) >= 1e-15) {
                const auto pq = rationalize(std::fabs(r));
                if (!pq) {
                    out.push_back(none_entry(
                        "2*gamma + 1 is not recognized as rational: no "
                        "commensurate revival distance"));
                    break;
                }
                k_step = 2 * pq->second / std::gcd(pq->first, 2 * pq->second);
            }
            int emitted = 0;
            bool have_pst = false;
            for (long long k = k_step; k <= 64 * k_step; k += k_step) {
                if (emitted >= 3 && have_pst) break;
                auto e = event_at(spec,
                                  kPi * static_cast<double>(k) /
                                      (2.0 * params.beta),
                                  "admissible index k = " + std::to_string(k));
                if (!e) continue;
                const bool is_pst = e->kind == PredictionKind::PST;
                if (emitted < 3) {
                    out.push_back(*e);
                    ++emitted;
                    if (is_pst) have_pst = true;
                } else if (is_pst && !have_pst) {
                    out.push_back(*e);
                    have_pst = true;
                }
            }
            if (!have_pst) {
                out.push_back(none_entry(
                    "no perfect transfer among admissible k <= 64 steps"));
            }
            break;
        }
        case Family::QRacah:
        case Family::ParaRacah:
            out = predict_generic(params, spec);
            break;
    }
    sort_predictions(out);
    return out;
}

std::vector<TransportPrediction> nnn_krawtchouk_prediction(int n_max,
                                                           double alpha_nnn,
                                                           double beta_nnn) {
    if (n_max < 1) throw InvalidParams("n_max must be at least 1");
    std::vector<TransportPrediction> out;

    if (std::fabs(alpha_nnn) <= 1e-15 * std::max(1.0, std::fabs(beta_nnn))) {
        if (!(beta_nnn > 0.0)) {
            out.push_back(none_entry(
                "degenerate chain: alpha = 0 requires beta > 0"));
            return out;
        }
        ModelParams kraw;
        kraw.family = Family::Krawtchouk;
        kraw.n_max = n_max;
        kraw.beta = beta_nnn;
        return predict_transport(kraw);
    }
    if (alpha_nnn < 0.0) {
        out.push_back(none_entry(
            "alpha < 0: inverted-curvature chains are out of scope"));
        return out;
    }

    const double ratio = beta_nnn / alpha_nnn;
    const double excess = ratio - (n_max + 1.0);
    long long p = 0, q = 1;
    if (std::fabs(excess) >= 1e-12) {
        const auto pq = rationalize(std::fabs(excess));
        if (!pq) {
            out.push_back(none_entry(
                "beta/alpha - (N+1) is not recognized as a rational p/q (max "
                "denominator 1e6): no finite transfer distance"));
            return out;
        }
        p = (excess < 0.0 ? -1 : 1) * pq->first;
        q = pq->second;
    }
    if (p <= -2 * q) {
        out.push_back(none_entry(
            "beta/alpha <= N-1: the eigenvalue map is non-monotone on the "
            "lattice; analysis out of scope"));
        return out;
    }

    // Transformed spectrum alpha*lambda^2 + beta*lambda on the unit
    // Krawtchouk lattice; monotone increasing in this parameter region.
    std::vector<double> transformed(static_cast<std::size_t>(n_max) + 1);
    for (int s = 0; s <= n_max; ++s) {
        const double lam = s - n_max / 2.0;
        transformed[static_cast<std::size_t>(s)] =
            alpha_nnn * lam * lam + beta_nnn * lam;
    }
    Spectrum tspec;
    tspec.values = std::move(transformed);
    tspec.scale = 1.0;
    tspec.validate();

    const long long pp = p + q;
    const long long k_step =
        (pp == 0) ? 1 : 2 * q / std::gcd(std::llabs(pp), 2 * q);
    int emitted = 0;
    for (long long k = k_step; emitted < 3 && k <= 3 * k_step; k += k_step) {
        auto e = event_at(tspec,
                          kPi * static_cast<double>(k) / (2.0 * alpha_nnn),
                          "admissible index k = " + std::to_string(k));
        if (e) {
            out.push_back(*e);
            ++emitted;
        }
    }

    if (p % 2 != 0) {
        const double z_pst =
            kPi * static_cast<double>(p + q * (n_max + 1)) / beta_nnn;
        bool already = false;
        for (const TransportPrediction& pred : out) {
            if (std::fabs(pred.distance - z_pst) <= 1e-12 * z_pst) {
                already = true;
            }
        }
        if (!already) {
            auto e = event_at(tspec, z_pst,
                              "minimal perfect transfer with 2*c0+1 = " +
                                  std::to_string(p) + ", c1 = " +
                                  std::to_string(q));
            if (e) out.push_back(*e);
        }
    } else {
        out.push_back(none_entry(
            "beta/alpha - (N+1) = " + std::to_string(p) + "/" +
            std::to_string(q) +
            " has an even numerator: no perfect transfer distance exists"));
    }
    sort_predictions(out);
    return out;
}

}  // namespace lforge
