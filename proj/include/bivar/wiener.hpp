#pragma once

#include <vector>

#include "bivar/filters.hpp"
#include "bivar/spectral.hpp"

namespace bivar {

/**
 * Additive denoising problem y = x + w with known full-grid spectral
 * densities of the signal and of the independent noise. The observation
 * density is the bin-wise quaternion sum.
 */
struct DenoisingProblem {
    PolarizationDensity gxx;
    PolarizationDensity gww;

    size_t size() const { return gxx.size(); }
    DensityBin gyy_bin(size_t k) const {
        return decompose_density(gxx.bin_quat(k) + gww.bin_quat(k));
    }
};

struct WienerResult {
    QSpectrum spectrum;
    // bins where 1 - Phi_y^2 fell below 1e-12 and Phi_y was clamped
    size_t regularized_bins = 0;
};

/**
 * Frequency-domain Wiener denoising filter, the per-bin composition of the
 * two Hermitian stages of the spectral-density-matrix solution Pxx Pyy^-1:
 * Xhat = [S0x / (S0y (1 - Phiy^2))]
 *        [(1 + Phix Phiy mux muy) Y - (Phix mux - Phiy muy) Y j].
 * When the signal and observation axes are parallel (always the case for
 * unpolarized noise) this is the Hermitian filter with scalar coefficient
 * 1 - Phix Phiy <mux, muy>. Bins with S0y = 0 output zero; Phi_y ~ 1 bins
 * are clamped to 1 - 1e-9 and counted in the result.
 */
WienerResult wiener_apply(const QSpectrum& Y, const DenoisingProblem& prob);

/** Simplified filter for unpolarized noise of per-bin variance sigma2,
 *  parameterized by the frequency-domain SNR alpha = S0x / sigma2. */
QSpectrum wiener_unpolarized_noise(const QSpectrum& Y, const std::vector<double>& s0x,
                                   const std::vector<double>& phix,
                                   const std::vector<std::optional<PureUnit>>& mux,
                                   const std::vector<double>& sigma2);

struct MmseResult {
    std::vector<double> per_bin;  // eps_opt(nu_k)
    double total = 0.0;           // sum of per-bin values times the bin spacing
};

// MMSE in the signal/observation form (uses the derived Gyy).
MmseResult mmse(const DenoisingProblem& prob, double dt);
// MMSE in the signal/noise form (uses alpha = S0x/S0w, Phi_w, mu_w).
MmseResult mmse_signal_noise(const DenoisingProblem& prob, double dt);

struct DenoiseResult {
    BivariateSignal signal;
    double offplane_fraction = 0.0;
    size_t regularized_bins = 0;
};

/** Time-domain pipeline: forward QFT, Wiener filter, inverse QFT. */
DenoiseResult denoise(const BivariateSignal& y, const DenoisingProblem& prob);

// Reconstruction SNR 10 log10(||x||^2 / ||xhat - x||^2) in dB.
double reconstruction_snr_db(const BivariateSignal& x, const BivariateSignal& xhat);

}  // namespace bivar
