#include "bivar/wiener.hpp"

#include <cmath>
#include <stdexcept>

#include "bivar/qft.hpp"

namespace bivar {

namespace {

constexpr double kPhiClamp = 1.0 - 1e-9;

struct BinGeometry {
    double s0x = 0.0, phix = 0.0;
    double s0y = 0.0, phiy = 0.0;
    double align = 0.0;  // <mu_x, mu_y>
    Quaternion mux{}, muy{};
    bool clamped = false;
};

BinGeometry bin_geometry(const DenoisingProblem& prob, size_t k) {
    BinGeometry g;
    const DensityBin bx = prob.gxx.bin(k);
    const DensityBin by = prob.gyy_bin(k);
    g.s0x = bx.s0;
    g.s0y = by.s0;
    g.phix = bx.mu ? bx.phi : 0.0;
    g.phiy = by.mu ? by.phi : 0.0;
    if (bx.mu) g.mux = bx.mu->quat();
    if (by.mu) g.muy = by.mu->quat();
    if (bx.mu && by.mu) g.align = inner3(*bx.mu, *by.mu);
    if (1.0 - g.phiy * g.phiy < 1e-12 && g.s0y > 0.0) {
        g.phiy = kPhiClamp;
        g.clamped = true;
    }
    return g;
}

// Composite of the two Hermitian stages Pyy^-1 then Pxx: the left
// coefficient 1 + Phix Phiy mux muy is a full quaternion whose scalar part
// is 1 - Phix Phiy <mux, muy>; its vector part vanishes whenever the two
// axes are parallel (in particular for unpolarized noise).
Quaternion wiener_bin(const Quaternion& y, const BinGeometry& g) {
    if (g.s0y <= 0.0) return {};
    const double coeff = g.s0x / (g.s0y * (1.0 - g.phiy * g.phiy));
    const Quaternion left =
        Quaternion{1, 0, 0, 0} + g.phix * g.phiy * (g.mux * g.muy);
    const Quaternion v = g.phix * g.mux - g.phiy * g.muy;
    return coeff * (left * y - v * y * Quaternion::unit_j());
}

}  // namespace

WienerResult wiener_apply(const QSpectrum& Y, const DenoisingProblem& prob) {
    if (prob.gxx.size() != Y.size() || prob.gww.size() != Y.size())
        throw std::invalid_argument("wiener_apply: grid mismatch");
    WienerResult out;
    out.spectrum.dt = Y.dt;
    out.spectrum.bins.resize(Y.size());
    for (size_t k = 0; k < Y.size(); ++k) {
        const BinGeometry g = bin_geometry(prob, k);
        if (g.clamped) ++out.regularized_bins;
        out.spectrum.bins[k] = wiener_bin(Y.bins[k], g);
    }
    return out;
}

QSpectrum wiener_unpolarized_noise(const QSpectrum& Y, const std::vector<double>& s0x,
                                   const std::vector<double>& phix,
                                   const std::vector<std::optional<PureUnit>>& mux,
                                   const std::vector<double>& sigma2) {
    const size_t n = Y.size();
    if (s0x.size() != n || phix.size() != n || mux.size() != n || sigma2.size() != n)
        throw std::invalid_argument("wiener_unpolarized_noise: grid mismatch");
    QSpectrum out;
    out.dt = Y.dt;
    out.bins.resize(n);
    for (size_t k = 0; k < n; ++k) {
        if (sigma2[k] <= 0.0)
            throw std::invalid_argument("wiener_unpolarized_noise: sigma2 must be > 0");
        const double alpha = s0x[k] / sigma2[k];
        const double p = mux[k] ? phix[k] : 0.0;
        const double one_minus = 1.0 - p * p;
        const double coeff =
            (alpha + alpha * alpha * one_minus) / (1.0 + 2.0 * alpha + alpha * alpha * one_minus);
        Quaternion y = Y.bins[k];
        if (mux[k]) {
            const double vec = p / (1.0 + alpha * one_minus);
            y -= vec * (mux[k]->quat() * Y.bins[k] * Quaternion::unit_j());
        }
        out.bins[k] = coeff * y;
    }
    return out;
}

MmseResult mmse(const DenoisingProblem& prob, double dt) {
    MmseResult out;
    const size_t n = prob.size();
    out.per_bin.resize(n);
    for (size_t k = 0; k < n; ++k) {
        const BinGeometry g = bin_geometry(prob, k);
        double eps = 0.0;
        if (g.s0y > 0.0 && g.s0x > 0.0) {
            const double num =
                1.0 + g.phix * g.phix - 2.0 * g.phix * g.phiy * g.align;
            eps = g.s0x * (1.0 - (g.s0x / g.s0y) * num / (1.0 - g.phiy * g.phiy));
        }
        out.per_bin[k] = eps;
        out.total += eps;
    }
    out.total /= static_cast<double>(n) * dt;  // times bin spacing 1/(N dt)
    return out;
}

MmseResult mmse_signal_noise(const DenoisingProblem& prob, double dt) {
    MmseResult out;
    const size_t n = prob.size();
    out.per_bin.resize(n);
    for (size_t k = 0; k < n; ++k) {
        const DensityBin bx = prob.gxx.bin(k);
        const DensityBin bw = prob.gww.bin(k);
        double eps = 0.0;
        if (bx.s0 > 0.0) {
            if (bw.s0 <= 0.0) {
                eps = 0.0;  // noise-free bin, perfectly recovered
            } else {
                const double alpha = bx.s0 / bw.s0;
                const double phix = bx.mu ? bx.phi : 0.0;
                const double phiw = bw.mu ? bw.phi : 0.0;
                const double align =
                    (bx.mu && bw.mu) ? inner3(*bx.mu, *bw.mu) : 0.0;
                const double c = 1.0 - phiw * phiw;
                const double one_minus = 1.0 - phix * phix;
                const double num = c + alpha * one_minus;
                const double den = c + alpha * alpha * one_minus +
                                   2.0 * alpha * (1.0 - phix * phiw * align);
                eps = bx.s0 * num / den;
            }
        }
        out.per_bin[k] = eps;
        out.total += eps;
    }
    out.total /= static_cast<double>(n) * dt;
    return out;
}

DenoiseResult denoise(const BivariateSignal& y, const DenoisingProblem& prob) {
    if (prob.size() != y.size())
        throw std::invalid_argument("denoise: densities must match the signal length");
    const QSpectrum Y = qft_forward(y);
    const WienerResult w = wiener_apply(Y, prob);
    const InverseResult inv = qft_inverse(w.spectrum);
    return {inv.signal, inv.offplane_fraction, w.regularized_bins};
}

double reconstruction_snr_db(const BivariateSignal& x, const BivariateSignal& xhat) {
    if (x.size() != xhat.size())
        throw std::invalid_argument("reconstruction_snr_db: length mismatch");
    double sig = 0.0, err = 0.0;
    for (size_t n = 0; n < x.size(); ++n) {
        const double e1 = xhat.x1[n] - x.x1[n];
        const double e2 = xhat.x2[n] - x.x2[n];
        sig += x.x1[n] * x.x1[n] + x.x2[n] * x.x2[n];
        err += e1 * e1 + e2 * e2;
    }
    return 10.0 * std::log10(sig / err);
}

}  // namespace bivar
