#pragma once

#include <cstdint>

#include "bivar/filters.hpp"
#include "bivar/signal.hpp"
#include "bivar/spectral.hpp"

namespace bivar {

/**
 * Small splittable PRNG (xoshiro256++ seeded through splitmix64) with a
 * Box-Muller Gaussian. Self-contained so that seeded runs are bit-identical
 * across platforms and standard libraries.
 */
class Rng {
  public:
    explicit Rng(uint64_t seed);

    uint64_t next_u64();
    double uniform01();  // in (0, 1]
    double gaussian();   // standard normal

  private:
    uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/**
 * Bivariate white-noise description, either by channel statistics
 * (sigma_u, sigma_v, rho_uv) or by polarization (S0, Phi, theta) for a
 * partially linearly polarized noise.
 */
struct WhiteNoiseSpec {
    double sigma_u = 0.0;
    double sigma_v = 0.0;
    double rho_uv = 0.0;

    static WhiteNoiseSpec channels(double sigma_u, double sigma_v, double rho_uv);
    static WhiteNoiseSpec polarized(double s0, double phi, double theta);
    // Unit-power unpolarized noise: sigma_u = sigma_v = 1/sqrt(2), rho = 0.
    static WhiteNoiseSpec unpolarized_unit();

    // Flat quaternion spectral density of the noise for sample period dt:
    // dt [su^2+sv^2 + j(su^2-sv^2) + 2k rho su sv].
    Quaternion expected_density(double dt = 1.0) const;

    bool is_polarized_form = false;  // set by polarized(); generation then
    double s0w = 0.0;                // follows the unpolarized/polarized split
    double phi = 0.0;
    double theta = 0.0;
};

/** Gaussian i.i.d. bivariate white noise; deterministic for a given seed. */
BivariateSignal white_noise(const WhiteNoiseSpec& spec, size_t n, uint64_t seed,
                            double dt = 1.0);

/** Spectral density target on the nonnegative-frequency half grid of an
 *  N-point record. */
struct SynthesisTarget {
    PolarizationDensity half;  // half_grid_size(n) bins
    double dt = 1.0;
};

/**
 * Gaussian spectral synthesis: an M = oversample * N sample unpolarized white
 * noise record is shaped by the Hermitian filter identified from the target
 * density, inverse transformed, and truncated to the first N samples.
 * Phi = 1 targets are allowed (polarizer filter); Phi > 1 is rejected.
 */
BivariateSignal spectral_synthesis(const SynthesisTarget& target, size_t n,
                                   size_t oversample, uint64_t seed);

// The target resampled onto the half grid of an M-point record by
// nearest-bin lookup, with self-mirror bins (DC, Nyquist) forced to comply
// with the i-Hermitian symmetry constraints.
PolarizationDensity resample_target_half(const SynthesisTarget& target, size_t n,
                                         size_t m);

}  // namespace bivar
