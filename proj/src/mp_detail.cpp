#include "mp_detail.hpp"

#include <cstddef>

#include "lforge/errors.hpp"

namespace lforge::detail {

std::vector<Big> poly_from_roots(const std::vector<Big>& roots) {
    std::vector<Big> coeffs{Big(1)};
    for (const Big& r : roots) {
        coeffs.push_back(coeffs.back());
        for (std::size_t k = coeffs.size() - 2; k > 0; --k) {
            coeffs[k] = coeffs[k - 1] - r * coeffs[k];
        }
        coeffs[0] = -r * coeffs[0];
    }
    return coeffs;
}

std::vector<Big> synthetic_quotient(const std::vector<Big>& poly,
                                    const Big& root) {
    const std::size_t deg = poly.size() - 1;
    std::vector<Big> q(deg);
    q[deg - 1] = poly[deg];
    for (std::size_t k = deg - 1; k > 0; --k) {
        q[k - 1] = poly[k] + root * q[k];
    }
    return q;
}

std::vector<Big> barycentric_omega(const std::vector<Big>& nodes) {
    const std::size_t count = nodes.size();
    std::vector<Big> omega(count);
    for (std::size_t s = 0; s < count; ++s) {
        Big prod = 1;
        for (std::size_t i = 0; i < count; ++i) {
            if (i != s) prod *= nodes[s] - nodes[i];
        }
        if (prod == 0) {
            throw DegreeDefect("coincident interpolation nodes");
        }
        omega[s] = Big(1) / prod;
    }
    return omega;
}

ChiInterpolantBig chi_interpolant(const std::vector<Big>& nodes) {
    const int n_max = static_cast<int>(nodes.size()) - 1;
    const auto node_poly = poly_from_roots(nodes);
    const auto omega = barycentric_omega(nodes);

    ChiInterpolantBig out;
    out.coeffs.assign(nodes.size(), Big(0));
    for (int s = 0; s <= n_max; ++s) {
        const auto q = synthetic_quotient(node_poly, nodes[s]);
        const Big scale = ((n_max + s) % 2 == 0 ? omega[s] : -omega[s]);
        for (std::size_t k = 0; k < q.size(); ++k) {
            out.coeffs[k] += scale * q[k];
        }
    }
    out.lead = out.coeffs.back();
    return out;
}

void char_eval(const std::vector<Big>& couplings,
               const std::vector<Big>& site_constants, const Big& x,
               Big* value, Big* derivative) {
    // d_k = (x - B_{k-1}) d_{k-1} - J_{k-1}^2 d_{k-2}, differentiated in step.
    Big d_prev = 1, d_cur = x - site_constants[0];
    Big p_prev = 0, p_cur = 1;
    for (std::size_t k = 1; k < site_constants.size(); ++k) {
        const Big jj = couplings[k - 1] * couplings[k - 1];
        const Big d_next = (x - site_constants[k]) * d_cur - jj * d_prev;
        const Big p_next = d_cur + (x - site_constants[k]) * p_cur - jj * p_prev;
        d_prev = d_cur;
        d_cur = d_next;
        p_prev = p_cur;
        p_cur = p_next;
    }
    *value = d_cur;
    *derivative = p_cur;
}

std::vector<Big> refine_eigenvalues(const std::vector<double>& couplings,
                                    const std::vector<double>& site_constants,
                                    const std::vector<double>& seeds) {
    std::vector<Big> j_big(couplings.begin(), couplings.end());
    std::vector<Big> b_big(site_constants.begin(), site_constants.end());
    const std::size_t count = seeds.size();

    std::vector<Big> refined(count);
    for (std::size_t s = 0; s < count; ++s) {
        // Half the distance to the nearest neighbour keeps exactly one root
        // inside the bracket.
        double gap = 0.0;
        if (s > 0) gap = seeds[s] - seeds[s - 1];
        if (s + 1 < count) {
            const double right = seeds[s + 1] - seeds[s];
            gap = gap == 0.0 ? right : std::min(gap, right);
        }
        Big lo = Big(seeds[s]) - Big(gap) / 2;
        Big hi = Big(seeds[s]) + Big(gap) / 2;
        Big f_lo, f_hi, unused;
        char_eval(j_big, b_big, lo, &f_lo, &unused);
        char_eval(j_big, b_big, hi, &f_hi, &unused);
        const bool bracketed = (f_lo < 0) != (f_hi < 0);

        Big x = seeds[s];
        for (int it = 0; it < 200; ++it) {
            Big f, df;
            char_eval(j_big, b_big, x, &f, &df);
            if (f == 0 || df == 0) break;
            if (bracketed) {
                if ((f < 0) == (f_lo < 0)) {
                    lo = x;
                } else {
                    hi = x;
                }
            }
            Big step = f / df;
            Big next = x - step;
            if (bracketed && (next <= lo || next >= hi)) {
                next = (lo + hi) / 2;  // Newton left the bracket; bisect
                step = x - next;
            }
            x = next;
            if (abs(step) <= abs(x) * Big("1e-200") + Big("1e-260")) break;
        }
        refined[s] = x;
    }
    return refined;
}

}  // namespace lforge::detail
