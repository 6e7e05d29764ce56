#include "lforge/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "lforge/errors.hpp"
#include "lforge/transport.hpp"
#include "mp_detail.hpp"

namespace lforge {

double MonicPoly::eval(double x) const {
    double acc = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;) {
        acc = acc * x + coefficients[k];
    }
    return acc;
}

double ChiInterpolant::eval_raw(double x) const {
    const std::size_t count = nodes.size();
    const int n_max = static_cast<int>(count) - 1;
    // Exact at nodes by construction.
    for (std::size_t s = 0; s < count; ++s) {
        if (x == nodes[s]) {
            return ((n_max + static_cast<int>(s)) % 2 == 0) ? 1.0 : -1.0;
        }
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        const double term = bary_omega[s] / (x - nodes[s]);
        const double y = ((n_max + static_cast<int>(s)) % 2 == 0) ? 1.0 : -1.0;
        num += term * y;
        den += term;
    }
    return num / den;
}

std::vector<double> eval_chi(const LatticeSpec& lattice, double x) {
    lattice.validate();
    const int n = lattice.n_max;
    std::vector<double> chi(static_cast<std::size_t>(n) + 1);
    chi[0] = 1.0;
    if (n == 0) return chi;
    chi[1] = (x - lattice.site_constants[0]) / lattice.couplings[0];
    for (int k = 1; k < n; ++k) {
        chi[static_cast<std::size_t>(k) + 1] =
            ((x - lattice.site_constants[static_cast<std::size_t>(k)]) *
                 chi[static_cast<std::size_t>(k)] -
             lattice.couplings[static_cast<std::size_t>(k) - 1] *
                 chi[static_cast<std::size_t>(k) - 1]) /
            lattice.couplings[static_cast<std::size_t>(k)];
    }
    return chi;
}

MonicPoly characteristic_poly(const Spectrum& spectrum) {
    spectrum.validate();
    const std::vector<double> roots = spectrum.physical();
    std::vector<double> coeffs{1.0};
    for (double r : roots) {
        coeffs.push_back(0.0);
        for (std::size_t k = coeffs.size() - 1; k > 0; --k) {
            coeffs[k] = coeffs[k - 1] - r * coeffs[k];
        }
        coeffs[0] = -r * coeffs[0];
    }
    MonicPoly poly;
    poly.coefficients = std::move(coeffs);
    return poly;
}

ChiInterpolant chi_n_from_spectrum(const Spectrum& spectrum) {
    spectrum.validate();
    const std::vector<double> nodes = spectrum.physical();
    const std::size_t count = nodes.size();

    std::vector<detail::Big> big_nodes(count);
    for (std::size_t s = 0; s < count; ++s) big_nodes[s] = nodes[s];
    const detail::ChiInterpolantBig big = detail::chi_interpolant(big_nodes);

    ChiInterpolant out;
    out.lead = static_cast<double>(big.lead);
    if (!(out.lead > 0.0)) {
        throw NonPositiveLeadingCoefficient(
            "chi interpolant has non-positive leading coefficient; the "
            "spectrum admits no positive-coupling mirror-symmetric chain");
    }
    out.nodes = nodes;
    out.raw.resize(big.coeffs.size());
    out.monic.coefficients.resize(big.coeffs.size());
    for (std::size_t k = 0; k < big.coeffs.size(); ++k) {
        out.raw[k] = static_cast<double>(big.coeffs[k]);
        out.monic.coefficients[k] = static_cast<double>(big.coeffs[k] / big.lead);
    }
    out.monic.coefficients.back() = 1.0;

    // Barycentric weights, normalized so the largest magnitude is 1 (any
    // common scale cancels in the second-form ratio).
    out.bary_omega.resize(count);
    double max_mag = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        double prod = 1.0;
        for (std::size_t j = 0; j < count; ++j) {
            if (j != s) prod *= nodes[s] - nodes[j];
        }
        out.bary_omega[s] = 1.0 / prod;
        max_mag = std::max(max_mag, std::fabs(out.bary_omega[s]));
    }
    for (double& w : out.bary_omega) w /= max_mag;
    return out;
}

std::vector<double> weights_from_spectrum(const Spectrum& spectrum,
                                          double* pre_normalization_defect) {
    const ChiInterpolant chi = chi_n_from_spectrum(spectrum);
    const std::vector<double>& nodes = chi.nodes;
    const std::size_t count = nodes.size();
    const int n_max = static_cast<int>(count) - 1;
    const double h_sqrt = 1.0 / chi.lead;

    std::vector<double> weights(count);
    double total = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        // P'_{N+1}(lambda_s) for the monic characteristic polynomial.
        double deriv = 1.0;
        for (std::size_t j = 0; j < count; ++j) {
            if (j != s) deriv *= nodes[s] - nodes[j];
        }
        const double chi_end =
            ((n_max + static_cast<int>(s)) % 2 == 0) ? 1.0 : -1.0;
        const double w = h_sqrt / (chi_end * deriv);
        if (!(w > 0.0)) {
            throw NonPositiveWeight("weight " + std::to_string(s) +
                                    " is not positive");
        }
        weights[s] = w;
        total += w;
    }
    if (pre_normalization_defect != nullptr) {
        *pre_normalization_defect = std::fabs(total - 1.0);
    }
    for (double& w : weights) w /= total;
    return weights;
}

PolySystem build_poly_system(const LatticeSpec& lattice,
                             const Spectrum& spectrum, double tol) {
    lattice.validate();
    spectrum.validate();
    if (lattice.n_max != spectrum.n_max()) {
        throw SpectrumMismatch("spectrum has " +
                               std::to_string(spectrum.values.size()) +
                               " levels but the lattice has " +
                               std::to_string(lattice.sites()) + " sites");
    }

    const std::vector<double> target = spectrum.physical();
    const double spread = target.back() - target.front();
    const EigenSystem eigen = eigendecompose(lattice);
    double max_dev = 0.0;
    for (std::size_t s = 0; s < target.size(); ++s) {
        max_dev = std::max(max_dev, std::fabs(eigen.eigenvalues[s] - target[s]));
    }
    if (max_dev > tol * spread) {
        throw SpectrumMismatch(
            "lattice eigenvalues deviate from the requested spectrum by " +
            std::to_string(max_dev) + " (relative " +
            std::to_string(max_dev / spread) + ", tolerance " +
            std::to_string(tol) + ")");
    }

    const int n = lattice.n_max;
    const std::size_t sites = static_cast<std::size_t>(n) + 1;

    // Polish the eigenvalues in extended precision, then run the recurrence
    // there; this keeps the end-site values and the orthogonality defects at
    // the double rounding floor even for spectra with huge dynamic range.
    const std::vector<detail::Big> refined = detail::refine_eigenvalues(
        lattice.couplings, lattice.site_constants, eigen.eigenvalues);

    std::vector<std::vector<detail::Big>> chi_big(
        sites, std::vector<detail::Big>(sites));
    for (std::size_t s = 0; s < sites; ++s) {
        const detail::Big& x = refined[s];
        chi_big[0][s] = 1;
        if (n == 0) continue;
        chi_big[1][s] = (x - lattice.site_constants[0]) / lattice.couplings[0];
        for (int k = 1; k < n; ++k) {
            chi_big[static_cast<std::size_t>(k) + 1][s] =
                ((x - lattice.site_constants[static_cast<std::size_t>(k)]) *
                     chi_big[static_cast<std::size_t>(k)][s] -
                 lattice.couplings[static_cast<std::size_t>(k) - 1] *
                     chi_big[static_cast<std::size_t>(k) - 1][s]) /
                lattice.couplings[static_cast<std::size_t>(k)];
        }
    }

    // w_s = 1 / sum_n chi_n(lambda_s)^2, exact at true eigenvalues.
    std::vector<detail::Big> w_big(sites);
    detail::Big w_total = 0;
    for (std::size_t s = 0; s < sites; ++s) {
        detail::Big norm = 0;
        for (std::size_t k = 0; k < sites; ++k) {
            norm += chi_big[k][s] * chi_big[k][s];
        }
        w_big[s] = 1 / norm;
        w_total += w_big[s];
    }
    const double weight_defect = static_cast<double>(abs(w_total - 1));
    for (std::size_t s = 0; s < sites; ++s) w_big[s] /= w_total;

    detail::Big ortho = 0;
    for (std::size_t a = 0; a < sites; ++a) {
        for (std::size_t b = a; b < sites; ++b) {
            detail::Big acc = 0;
            for (std::size_t s = 0; s < sites; ++s) {
                acc += w_big[s] * chi_big[a][s] * chi_big[b][s];
            }
            if (a == b) acc -= 1;
            ortho = std::max(ortho, detail::Big(abs(acc)));
        }
    }

    PolySystem system;
    system.lattice = lattice;
    system.chi_table.assign(sites, std::vector<double>(sites));
    system.weights.resize(sites);
    for (std::size_t k = 0; k < sites; ++k) {
        for (std::size_t s = 0; s < sites; ++s) {
            system.chi_table[k][s] = static_cast<double>(chi_big[k][s]);
        }
    }
    for (std::size_t s = 0; s < sites; ++s) {
        system.weights[s] = static_cast<double>(w_big[s]);
    }
    double h_sqrt = 1.0;
    for (double j : lattice.couplings) h_sqrt *= j;
    system.h_sqrt = h_sqrt;
    system.weight_defect = weight_defect;
    system.ortho_defect = static_cast<double>(ortho);
    return system;
}

}  // namespace lforge
