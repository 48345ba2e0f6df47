#pragma once

#include <array>

#include "bivar/signal.hpp"

namespace bivar {

/**
 * Forward quaternion Fourier transform with right-sided kernel on axis j:
 * X[k] = sum_n x[n] exp(-j 2 pi k n / N), unnormalized. Realized as the two
 * standard DFTs of the real channels assembled as X1 + i X2.
 * Throws on empty input.
 */
QSpectrum qft_forward(const BivariateSignal& x);

struct InverseResult {
    BivariateSignal signal;
    // fraction of the output energy sitting in the j/k components; nonzero
    // when the spectrum violates the i-Hermitian symmetry
    double offplane_fraction = 0.0;
    bool non_bivariate = false;  // set when offplane_fraction > 1e-8
};

// Inverse transform x[n] = (1/N) sum_k X[k] exp(+j 2 pi k n / N). The j/k
// residual of the output is reported; the caller decides what to do with a
// non-bivariate result.
InverseResult qft_inverse(const QSpectrum& X);

struct ParsevalInvariants {
    double energy = 0.0;                    // sum |x|^2 dt
    std::array<double, 3> polar{0, 0, 0};   // sum x j conj(x) dt, (i,j,k) parts
};

// Time-domain invariants of Eqs. (5)-(6) form.
ParsevalInvariants parseval_invariants(const BivariateSignal& x);
// Frequency-domain counterparts: sum |X|^2 dt / N and sum X j conj(X) dt / N.
ParsevalInvariants parseval_invariants(const QSpectrum& X);

// Largest relative violation of X[N-k] = involution(X[k], i) over the grid.
double ihermitian_violation(const QSpectrum& X);

}  // namespace bivar
