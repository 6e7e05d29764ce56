#include "lforge/inverse_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lforge/errors.hpp"
#include "lforge/transport.hpp"
#include "mp_detail.hpp"

namespace lforge {

namespace {

constexpr double kMinGapFactor = 1e-12;  // relative to the spectral spread
constexpr double kStepResidualTol = 1e-7;

}  // namespace

ReconstructionReport reconstruct(const Spectrum& spectrum) {
    spectrum.validate();
    const std::vector<double> phys = spectrum.physical();
    const std::size_t count = phys.size();
    const int n = static_cast<int>(count) - 1;
    const double spread = phys.back() - phys.front();

    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t s = 1; s < count; ++s) {
        min_gap = std::min(min_gap, phys[s] - phys[s - 1]);
    }
    if (min_gap < kMinGapFactor * spread) {
        throw DegreeDefect(
            "eigenvalue gap " + std::to_string(min_gap) +
            " is degenerate relative to the spectral spread; the division "
            "sequence is not well posed");
    }

    // Affine pre-scale to [-1, 1]: x_hat = (x - b) / a.
    const detail::Big a = detail::Big(spread) / 2;
    const detail::Big b =
        (detail::Big(phys.back()) + detail::Big(phys.front())) / 2;
    std::vector<detail::Big> nodes(count);
    for (std::size_t s = 0; s < count; ++s) {
        nodes[s] = (detail::Big(phys[s]) - b) / a;
    }

    const detail::ChiInterpolantBig chi = detail::chi_interpolant(nodes);
    if (!(chi.lead > 0)) {
        throw NonPositiveLeadingCoefficient(
            "end-site interpolant has non-positive leading coefficient");
    }

    std::vector<detail::Big> p_hi = detail::poly_from_roots(nodes);
    std::vector<detail::Big> p_lo(chi.coeffs.size());
    for (std::size_t k = 0; k < chi.coeffs.size(); ++k) {
        p_lo[k] = chi.coeffs[k] / chi.lead;
    }
    p_lo.back() = 1;

    std::vector<detail::Big> u_hat(count - 1);
    std::vector<detail::Big> b_hat(count);

    for (int k = n; k >= 1; --k) {
        const std::size_t uk_index = static_cast<std::size_t>(k);
        const detail::Big bk = p_lo[uk_index - 1] - p_hi[uk_index];
        b_hat[uk_index] = bk;

        std::vector<detail::Big> rem(uk_index);
        detail::Big max_coeff = 0;
        for (std::size_t i = 0; i < uk_index; ++i) {
            detail::Big r = -bk * p_lo[i] - p_hi[i];
            if (i > 0) r += p_lo[i - 1];
            rem[i] = r;
            max_coeff = std::max(max_coeff, detail::Big(abs(r)));
        }
        const detail::Big uk = rem[uk_index - 1];
        if (abs(uk) <= max_coeff * kStepResidualTol) {
            throw DegreeDefect("division step " + std::to_string(k) +
                               " left a degree-defective quotient; the "
                               "spectrum is inconsistent");
        }
        if (!(uk > 0)) {
            throw NegativeUn("U_" + std::to_string(k) + " = " +
                             std::to_string(static_cast<double>(uk)) +
                             " is not positive: the spectrum admits no "
                             "positive-coupling chain");
        }
        u_hat[uk_index - 1] = uk;

        p_hi = std::move(p_lo);
        for (detail::Big& c : rem) c /= uk;
        rem[uk_index - 1] = 1;
        p_lo = std::move(rem);
    }
    b_hat[0] = -p_hi[0];

    LatticeSpec lattice;
    lattice.n_max = n;
    lattice.couplings.resize(count - 1);
    lattice.site_constants.resize(count);
    ReconstructionReport report;
    report.per_step_u.resize(count - 1);
    for (std::size_t k = 0; k < count - 1; ++k) {
        lattice.couplings[k] = static_cast<double>(a * sqrt(u_hat[k]));
        report.per_step_u[k] = static_cast<double>(a * a * u_hat[k]);
    }
    for (std::size_t k = 0; k < count; ++k) {
        lattice.site_constants[k] = static_cast<double>(a * b_hat[k] + b);
    }
    lattice.validate();

    const EigenSystem eigen = eigendecompose(lattice);
    double residual = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        residual = std::max(residual, std::fabs(eigen.eigenvalues[s] - phys[s]));
    }
    report.lattice = std::move(lattice);
    report.residual_spectrum_error = residual / spread;
    report.mirror_defect = mirror_defect(report.lattice);
    return report;
}

std::pair<double, double> verify_roundtrip(const Spectrum& spectrum,
                                           const LatticeSpec& lattice) {
    spectrum.validate();
    lattice.validate();
    if (lattice.n_max != spectrum.n_max()) {
        throw InvalidParams("spectrum has " +
                            std::to_string(spectrum.values.size()) +
                            " levels but the lattice has " +
                            std::to_string(lattice.sites()) + " sites");
    }
    const std::vector<double> phys = spectrum.physical();
    const double spread = phys.back() - phys.front();
    const EigenSystem eigen = eigendecompose(lattice);
    double residual = 0.0;
    for (std::size_t s = 0; s < phys.size(); ++s) {
        residual = std::max(residual, std::fabs(eigen.eigenvalues[s] - phys[s]));
    }
    return {residual / spread, mirror_defect(lattice)};
}

}  // namespace lforge
