#pragma once

#include <optional>
#include <vector>

#include "bivar/qft.hpp"
#include "bivar/signal.hpp"

namespace bivar {

// Degree-of-polarization threshold below which an axis is considered absent.
inline constexpr double kPolarizationEps = 1e-12;

/**
 * One frequency bin of a quaternion spectral density split into total PSD,
 * degree of polarization and polarization axis. The axis is absent exactly
 * when the bin is (numerically) unpolarized.
 */
struct DensityBin {
    double s0 = 0.0;
    double phi = 0.0;
    std::optional<PureUnit> mu;

    Quaternion quat() const {
        Quaternion q{s0, 0.0, 0.0, 0.0};
        if (mu) {
            const double m = phi * s0;
            q.x = m * mu->x;
            q.y = m * mu->y;
            q.z = m * mu->z;
        }
        return q;
    }
};

/** Per-frequency polarization description of a spectral density. */
struct PolarizationDensity {
    std::vector<double> s0;
    std::vector<double> phi;
    std::vector<std::optional<PureUnit>> mu;

    size_t size() const { return s0.size(); }

    DensityBin bin(size_t k) const { return {s0[k], phi[k], mu[k]}; }
    Quaternion bin_quat(size_t k) const { return bin(k).quat(); }

    void push_back(const DensityBin& b) {
        s0.push_back(b.s0);
        phi.push_back(b.phi);
        mu.push_back(b.mu);
    }

    static PolarizationDensity with_size(size_t n) {
        PolarizationDensity d;
        d.s0.assign(n, 0.0);
        d.phi.assign(n, 0.0);
        d.mu.assign(n, std::nullopt);
        return d;
    }
};

struct StokesParams {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
};

/**
 * Per-bin quaternion spectral density |X|^2 + X j conj(X) with periodogram
 * scaling dt/N, so that summing the scalar part times the bin spacing gives
 * the average power.
 */
std::vector<Quaternion> density_from_spectrum(const QSpectrum& X);

/**
 * Split a density quaternion into (S0, Phi, mu). Values of Phi in
 * (1, 1+1e-9] from floating-point noise are clipped to 1; larger vector
 * parts or negative scalar parts are rejected as nonphysical.
 */
DensityBin decompose_density(const Quaternion& g);

PolarizationDensity decompose_density(const std::vector<Quaternion>& bins);

// S0 Phi mu = i S3 + j S1 + k S2 and back.
StokesParams stokes_from_bin(const DensityBin& b);
DensityBin bin_from_stokes(const StokesParams& s);

// Unpolarized/polarized split: (1-Phi) S0 plus Phi S0 (1 + mu); the parts
// recompose to the original quaternion density bin-wise.
struct UPSplit {
    PolarizationDensity unpolarized;
    PolarizationDensity polarized;
};
UPSplit up_split(const PolarizationDensity& d);

/**
 * Monte-Carlo density estimator: the per-bin quaternion densities of the
 * realizations are averaged (pairwise summation, deterministic order) and
 * decomposed. All realizations must share the same length.
 */
PolarizationDensity estimate_density(const std::vector<BivariateSignal>& realizations);

// Averaged quaternion density without the final decomposition.
std::vector<Quaternion> estimate_density_quat(const std::vector<BivariateSignal>& realizations);

/**
 * Extend a nonnegative-frequency density onto the full N-point grid using
 * the symmetry of real bivariate signals: S0 and Phi are even and the axis
 * mirrors with its i component flipped.
 */
PolarizationDensity extend_to_full_grid(const PolarizationDensity& half, size_t n);

// Restrict a full-grid density to the nonnegative-frequency bins.
PolarizationDensity restrict_to_half_grid(const PolarizationDensity& full);

}  // namespace bivar
