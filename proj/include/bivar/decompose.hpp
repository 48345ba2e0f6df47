#pragma once

#include <vector>

#include "bivar/spectral.hpp"

namespace bivar {

/** Which requirement the two-component split satisfies: the polarized-part
 *  power (i), an unpolarized remainder (ii), or uncorrelated parts (iii). */
enum class DecompositionMode {
    PolarizedPartPower,
    UnpolarizedRemainder,
    Uncorrelated,
};

// Homogeneous gain of the polarizer stage for one bin; removable
// singularities are evaluated by their limits (Phi = 0 gives K = 0 for
// modes i and ii).
double decomposition_gain_bin(double phi, DecompositionMode mode);
std::vector<double> decomposition_gain(const PolarizationDensity& d,
                                       DecompositionMode mode);

/**
 * Split x into x_a + x_b where X_a = K (X - mu_x X j) is the polarizer output
 * along the density axis and X_b = X - X_a. The sum is exact in the time
 * domain by construction; bins with an absent axis pass entirely to x_b.
 * The density must live on the full grid of the signal.
 */
struct SignalDecomposition {
    BivariateSignal a;
    BivariateSignal b;
};
SignalDecomposition decompose_signal(const BivariateSignal& x,
                                     const PolarizationDensity& d,
                                     DecompositionMode mode);

/** Closed-form component densities of the chosen decomposition. */
struct ComponentDensities {
    PolarizationDensity a;
    PolarizationDensity b;
};
ComponentDensities component_densities(const PolarizationDensity& d,
                                       DecompositionMode mode);

/**
 * Monte-Carlo uncorrelatedness statistic from paired realizations: per-bin
 * magnitudes of mean[Xa conj(Xb)] and mean[Xa j conj(Xb)], each normalized
 * by sqrt(S0a S0b). Near zero for uncorrelated pairs, ~1 for identical ones.
 */
struct UncorrelatedStats {
    std::vector<double> plain;     // |mean Xa conj(Xb)| / sqrt(S0a S0b)
    std::vector<double> inserted;  // |mean Xa j conj(Xb)| / sqrt(S0a S0b)

    double max_stat(size_t k) const { return std::max(plain[k], inserted[k]); }
};
UncorrelatedStats test_uncorrelated(const std::vector<BivariateSignal>& a,
                                    const std::vector<BivariateSignal>& b);

}  // namespace bivar
