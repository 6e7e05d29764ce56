#include "lforge/spectral_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "lforge/errors.hpp"

namespace lforge {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long long kLcmCap = 1000000000;      // lcm of denominators
constexpr long long kMultiplierCap = 1000000000000000;  // 1e15

std::vector<double> physical_gaps(const Spectrum& spectrum) {
    const std::vector<double> phys = spectrum.physical();
    std::vector<double> gaps(phys.size() - 1);
    for (std::size_t s = 1; s < phys.size(); ++s) {
        gaps[s - 1] = phys[s] - phys[s - 1];
    }
    return gaps;
}

// Multiplies with overflow detection against the given cap.
bool checked_mul(long long a, long long b, long long cap, long long& out) {
    const __int128 prod = static_cast<__int128>(a) * b;
    if (prod > cap) return false;
    out = static_cast<long long>(prod);
    return true;
}

double fold_zero_two_pi(double x) {
    double r = std::fmod(x, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r;
}

// Fold into (-pi, pi].
double fold_signed_pi(double x) {
    double r = fold_zero_two_pi(x);
    if (r > kPi) r -= 2.0 * kPi;
    return r;
}

}  // namespace

std::optional<std::pair<long long, long long>> rationalize(double x,
                                                           long long max_den,
                                                           double tol) {
    if (!(x > 0.0) || !std::isfinite(x)) return std::nullopt;
    const double bound = tol * std::max(1.0, x);
    long long p_prev = 1, q_prev = 0;  // convergent h_{-1}/k_{-1}
    long long p = 0, q = 1;            // convergent h_{-2}/k_{-2} rotated in
    double frac = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_floor = std::floor(frac);
        if (a_floor > 9e17) return std::nullopt;
        const long long a = static_cast<long long>(a_floor);
        long long p_new, q_new;
        if (!checked_mul(a, p_prev, std::numeric_limits<long long>::max() / 4,
                         p_new) ||
            !checked_mul(a, q_prev, std::numeric_limits<long long>::max() / 4,
                         q_new)) {
            return std::nullopt;
        }
        p_new += p;
        q_new += q;
        if (q_new > max_den) return std::nullopt;
        p = p_prev;
        q = q_prev;
        p_prev = p_new;
        q_prev = q_new;
        if (std::fabs(x - static_cast<double>(p_new) / q_new) <= bound) {
            return std::make_pair(p_new, q_new);
        }
        const double rem = frac - a_floor;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    return std::nullopt;
}

std::optional<PstResult> check_pst(const Spectrum& spectrum, double tol) {
    spectrum.validate();
    const std::vector<double> gaps = physical_gaps(spectrum);
    const double g_min = *std::min_element(gaps.begin(), gaps.end());

    std::vector<long long> nums(gaps.size()), dens(gaps.size());
    long long common_den = 1;
    for (std::size_t s = 0; s < gaps.size(); ++s) {
        const auto pq = rationalize(gaps[s] / g_min, 1000000, tol);
        if (!pq) return std::nullopt;
        nums[s] = pq->first;
        dens[s] = pq->second;
        const long long g = std::gcd(common_den, pq->second);
        if (!checked_mul(common_den / g, pq->second, kLcmCap, common_den)) {
            return std::nullopt;
        }
    }

    std::vector<long long> scaled(gaps.size());
    long long reduce = 0;
    for (std::size_t s = 0; s < gaps.size(); ++s) {
        if (!checked_mul(nums[s], common_den / dens[s], kMultiplierCap,
                         scaled[s])) {
            return std::nullopt;
        }
        reduce = std::gcd(reduce, scaled[s]);
    }
    for (long long& m : scaled) m /= reduce;
    for (long long m : scaled) {
        if (m % 2 == 0) return std::nullopt;
    }

    PstResult result;
    result.z_pst =
        kPi * static_cast<double>(common_den) / (g_min * static_cast<double>(reduce));
    result.multipliers = scaled;

    // Back-check in floating point that every gap is an odd multiple of pi/Z.
    for (std::size_t s = 0; s < gaps.size(); ++s) {
        const double m = gaps[s] * result.z_pst / kPi;
        const double rounded = std::llround(m);
        if (std::fabs(m - rounded) > 1e-6 * std::max(1.0, m) ||
            std::llround(m) != scaled[s]) {
            return std::nullopt;
        }
    }
    return result;
}

std::vector<FrEvent> check_fr(const Spectrum& spectrum, double tol,
                              double horizon) {
    spectrum.validate();
    const std::vector<double> phys = spectrum.physical();
    const int n = spectrum.n_max();
    if (horizon <= 0.0) horizon = 20.0 * kPi / spectrum.scale;
    const double parity = (n % 2 == 0) ? 1.0 : -1.0;
    const double top = phys.back();

    // Gap families: odd-top O_s = lambda_{2s+1} - lambda_{2s} and even-top
    // E_s = lambda_{2s} - lambda_{2s-1}.
    std::vector<double> odd_top, even_top;
    for (int s = 0; 2 * s + 1 <= n; ++s) {
        odd_top.push_back(phys[static_cast<std::size_t>(2 * s + 1)] -
                          phys[static_cast<std::size_t>(2 * s)]);
    }
    for (int s = 1; 2 * s <= n; ++s) {
        even_top.push_back(phys[static_cast<std::size_t>(2 * s)] -
                           phys[static_cast<std::size_t>(2 * s - 1)]);
    }

    const auto make_event = [&](double z) -> FrEvent {
        FrEvent event;
        event.z_fr = z;
        double rem = fold_zero_two_pi(z * odd_top[0]);
        if (rem > kPi) rem -= 2.0 * kPi;           // (-pi, pi]
        event.theta_raw = parity * rem / 2.0;      // [-pi/2, pi/2]
        event.theta = std::fabs(event.theta_raw);  // canonical [0, pi/2]
        event.phi = fold_signed_pi(-z * top - event.theta_raw);
        const double angle_tol = std::max(1e-9, tol);
        if (event.theta <= angle_tol) {
            event.kind = EventKind::Return;
        } else if (kPi / 2.0 - event.theta <= angle_tol) {
            event.kind = EventKind::PST;
        } else {
            event.kind = EventKind::FR;
        }
        return event;
    };

    // Certificate integers; false when some congruence misses an integer.
    const auto attach_certificates = [&](FrEvent& event) -> bool {
        const double two_theta = parity * 2.0 * event.theta_raw;
        for (double g : even_top) {
            const double l = (event.z_fr * g + two_theta) / (2.0 * kPi);
            const double rounded = std::llround(l);
            if (std::fabs(l - rounded) > 1e-6 * std::max(1.0, std::fabs(l))) {
                return false;
            }
            event.l0.push_back(std::llround(l));
        }
        for (double g : odd_top) {
            const double l = (event.z_fr * g - two_theta) / (2.0 * kPi);
            const double rounded = std::llround(l);
            if (std::fabs(l - rounded) > 1e-6 * std::max(1.0, std::fabs(l))) {
                return false;
            }
            event.l1.push_back(std::llround(l));
        }
        return true;
    };

    std::vector<FrEvent> events;

    if (n == 1) {
        // Two-level system: every distance realizes some rotation. Report the
        // canonical quarter-period trio only.
        const double g = odd_top[0];
        for (double z : {kPi / (2.0 * g), kPi / g, 2.0 * kPi / g}) {
            if (z > horizon) break;
            FrEvent event = make_event(z);
            if (attach_certificates(event)) events.push_back(event);
        }
        return events;
    }

    // All constraints Z*s = 0 (mod 2pi) for s in the difference set below;
    // the admissible Z are exactly the multiples of 2*pi/v with v the real
    // gcd of that set, recovered through rational reconstruction.
    std::vector<double> diffs;
    for (std::size_t s = 1; s < even_top.size(); ++s) {
        const double d = std::fabs(even_top[s] - even_top[0]);
        if (d > 0.0) diffs.push_back(d);
    }
    for (std::size_t s = 1; s < odd_top.size(); ++s) {
        const double d = std::fabs(odd_top[s] - odd_top[0]);
        if (d > 0.0) diffs.push_back(d);
    }
    diffs.push_back(even_top[0] + odd_top[0]);

    const double base = *std::min_element(diffs.begin(), diffs.end());
    long long common_den = 1;
    std::vector<long long> nums(diffs.size()), dens(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        const auto pq = rationalize(diffs[i] / base, 1000000, tol);
        if (!pq) return events;  // incommensurate: nothing admissible
        nums[i] = pq->first;
        dens[i] = pq->second;
        const long long g = std::gcd(common_den, pq->second);
        if (!checked_mul(common_den / g, pq->second, kLcmCap, common_den)) {
            return events;
        }
    }
    long long reduce = 0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        long long scaled;
        if (!checked_mul(nums[i], common_den / dens[i], kMultiplierCap,
                         scaled)) {
            return events;
        }
        reduce = std::gcd(reduce, scaled);
    }
    reduce = std::gcd(reduce, common_den);  // the base itself is in the set
    const double v = base * static_cast<double>(reduce) /
                     static_cast<double>(common_den);

    const long long k_max = static_cast<long long>(
        std::floor(horizon * v / (2.0 * kPi) + 1e-9));
    for (long long k = 1; k <= std::min(k_max, static_cast<long long>(100000));
         ++k) {
        FrEvent event = make_event(2.0 * kPi * static_cast<double>(k) / v);
        if (attach_certificates(event)) events.push_back(event);
    }
    return events;
}

std::optional<PstResult> check_pst_nnn(const Spectrum& spectrum,
                                       double alpha_nnn, double beta_nnn,
                                       double tol) {
    spectrum.validate();
    std::vector<double> transformed = spectrum.physical();
    for (double& x : transformed) {
        x = alpha_nnn * x * x + beta_nnn * x;
    }
    std::sort(transformed.begin(), transformed.end());
    const double spread = transformed.back() - transformed.front();
    if (!(spread > 0.0)) return std::nullopt;
    for (std::size_t s = 1; s < transformed.size(); ++s) {
        if (transformed[s] - transformed[s - 1] < 1e-12 * spread) {
            return std::nullopt;  // transform not injective
        }
    }
    Spectrum mapped;
    mapped.values = std::move(transformed);
    mapped.scale = 1.0;
    return check_pst(mapped, tol);
}

std::optional<std::vector<long long>> integer_valued_basis(
    const std::vector<double>& poly_values, double tol) {
    if (poly_values.empty()) return std::nullopt;
    std::vector<double> diff = poly_values;
    const std::size_t count = diff.size();
    for (std::size_t k = 1; k < count; ++k) {
        for (std::size_t i = count - 1; i >= k; --i) {
            diff[i] -= diff[i - 1];
        }
    }
    std::vector<long long> coeffs(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double rounded = std::llround(diff[k]);
        if (std::fabs(diff[k] - rounded) > tol * std::max(1.0, std::fabs(diff[k]))) {
            return std::nullopt;
        }
        coeffs[k] = std::llround(diff[k]);
    }
    return coeffs;
}

ConditionReport analyze(const Spectrum& spectrum, double tol, double horizon) {
    ConditionReport report;
    report.pst = check_pst(spectrum, tol);
    report.fr = check_fr(spectrum, tol, horizon);

    bool genuine = false;
    for (const FrEvent& event : report.fr) {
        if (event.kind == EventKind::FR) genuine = true;
    }
    std::string notes;
    if (spectrum.n_max() == 1) {
        notes +=
            "two-level spectrum: every distance realizes some rotation; only "
            "the quarter-period trio is listed. ";
    }
    if (!report.pst) {
        notes +=
            "no perfect state transfer distance exists (gaps are "
            "incommensurate or some reduced multiplier is even). ";
    }
    if (!genuine) {
        notes +=
            "no genuine fractional revival below the enumeration horizon: "
            "mixing angles collapse to multiples of pi/2. ";
    }
    notes +=
        "only end-to-end revivals are analyzed; interior mirror-pair "
        "revivals are not enumerated.";
    report.notes = notes;
    return report;
}

}  // namespace lforge
