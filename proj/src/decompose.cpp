#include "bivar/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bivar/qft.hpp"

namespace bivar {

double decomposition_gain_bin(double phi, DecompositionMode mode) {
    switch (mode) {
        case DecompositionMode::PolarizedPartPower:
            return std::sqrt(phi / (2.0 * (1.0 + phi)));
        case DecompositionMode::UnpolarizedRemainder: {
            // 1 - Phi/(Phi + 1 - sqrt(1-Phi^2)), rationalized; the removable
            // singularity at Phi = 0 has limit K = 0
            if (phi == 0.0) return 0.0;
            const double s = std::sqrt(std::max(0.0, 1.0 - phi * phi));
            return phi * phi / ((1.0 + phi - s) * (1.0 + s));
        }
        default:
            return 0.5;
    }
}

std::vector<double> decomposition_gain(const PolarizationDensity& d,
                                       DecompositionMode mode) {
    std::vector<double> g(d.size());
    for (size_t k = 0; k < d.size(); ++k)
        g[k] = decomposition_gain_bin(d.phi[k], mode);
    return g;
}

SignalDecomposition decompose_signal(const BivariateSignal& x,
                                     const PolarizationDensity& d,
                                     DecompositionMode mode) {
    if (d.size() != x.size())
        throw std::invalid_argument("decompose_signal: density grid does not match signal");
    const QSpectrum X = qft_forward(x);
    QSpectrum Xa;
    Xa.dt = X.dt;
    Xa.bins.resize(X.size());
    for (size_t k = 0; k < X.size(); ++k) {
        if (d.mu[k]) {
            const double gain = decomposition_gain_bin(d.phi[k], mode);
            Xa.bins[k] = gain * (X.bins[k] - d.mu[k]->quat() * X.bins[k] * Quaternion::unit_j());
        } else {
            Xa.bins[k] = {};  // no axis: everything goes to x_b
        }
    }
    SignalDecomposition out;
    out.a = qft_inverse(Xa).signal;
    out.b.dt = x.dt;
    out.b.x1.resize(x.size());
    out.b.x2.resize(x.size());
    for (size_t n = 0; n < x.size(); ++n) {
        out.b.x1[n] = x.x1[n] - out.a.x1[n];
        out.b.x2[n] = x.x2[n] - out.a.x2[n];
    }
    return out;
}

namespace {

DensityBin polarized_bin(double s0, const std::optional<PureUnit>& mu) {
    DensityBin b;
    b.s0 = s0;
    if (s0 > 0.0 && mu) {
        b.phi = 1.0;
        b.mu = mu;
    }
    return b;
}

}  // namespace

ComponentDensities component_densities(const PolarizationDensity& d,
                                       DecompositionMode mode) {
    ComponentDensities out;
    const size_t n = d.size();
    out.a = PolarizationDensity::with_size(n);
    out.b = PolarizationDensity::with_size(n);
    for (size_t k = 0; k < n; ++k) {
        const double s0 = d.s0[k];
        const double phi = d.mu[k] ? d.phi[k] : 0.0;
        if (!d.mu[k]) {
            // axis absent: x_a vanishes and x_b carries the input density
            out.b.s0[k] = s0;
            out.b.phi[k] = d.phi[k];
            continue;
        }
        const double gain = decomposition_gain_bin(phi, mode);
        DensityBin a, b;
        switch (mode) {
            case DecompositionMode::PolarizedPartPower: {
                a = polarized_bin(s0 * phi, d.mu[k]);
                // Gamma_bb = kappa S0 [1 - Phi_b mu_x] with kappa and the
                // vector coefficient evaluated at the row's gain; the vector
                // coefficient is 2(1+Phi)K - 2Phi, which the complementary
                // filter 1 - K(1 - mu .j) reproduces. Both vanish together
                // as Phi -> 1; clamp rounding noise at that corner.
                const double kappa =
                    std::max(0.0, 1.0 + phi - 2.0 * (1.0 + phi) * gain);
                const double vcoef = std::clamp(
                    2.0 * (1.0 + phi) * gain - 2.0 * phi, 0.0, kappa);
                const Quaternion mu = d.mu[k]->quat();
                b = decompose_density(Quaternion{kappa * s0, 0, 0, 0} -
                                      s0 * vcoef * mu);
                break;
            }
            case DecompositionMode::UnpolarizedRemainder: {
                a = polarized_bin(2.0 * s0 * gain * gain * (1.0 + phi), d.mu[k]);
                b.s0 = s0 * (1.0 - phi);
                break;
            }
            default: {  // Uncorrelated, K = 1/2
                a = polarized_bin(0.5 * s0 * (1.0 + phi), d.mu[k]);
                if (phi < 1.0) {
                    b = polarized_bin(0.5 * s0 * (1.0 - phi),
                                      std::optional<PureUnit>(-*d.mu[k]));
                }
                break;
            }
        }
        out.a.s0[k] = a.s0;
        out.a.phi[k] = a.phi;
        out.a.mu[k] = a.mu;
        out.b.s0[k] = b.s0;
        out.b.phi[k] = b.phi;
        out.b.mu[k] = b.mu;
    }
    return out;
}

UncorrelatedStats test_uncorrelated(const std::vector<BivariateSignal>& a,
                                    const std::vector<BivariateSignal>& b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("test_uncorrelated: realization count mismatch");
    const size_t n = a.front().size();
    const size_t r = a.size();
    std::vector<Quaternion> plain(n), inserted(n);
    std::vector<double> s0a(n, 0.0), s0b(n, 0.0);
    for (size_t i = 0; i < r; ++i) {
        if (a[i].size() != n || b[i].size() != n)
            throw std::invalid_argument("test_uncorrelated: realization length mismatch");
        const QSpectrum A = qft_forward(a[i]);
        const QSpectrum B = qft_forward(b[i]);
        for (size_t k = 0; k < n; ++k) {
            const Quaternion bc = B.bins[k].conj();
            plain[k] += A.bins[k] * bc;
            inserted[k] += A.bins[k] * Quaternion::unit_j() * bc;
            s0a[k] += A.bins[k].norm_sq();
            s0b[k] += B.bins[k].norm_sq();
        }
    }
    UncorrelatedStats out;
    out.plain.resize(n);
    out.inserted.resize(n);
    for (size_t k = 0; k < n; ++k) {
        const double norm = std::sqrt(s0a[k] * s0b[k]);
        out.plain[k] = norm > 0.0 ? plain[k].norm() / norm : 0.0;
        out.inserted[k] = norm > 0.0 ? inserted[k].norm() / norm : 0.0;
    }
    return out;
}

}  // namespace bivar
