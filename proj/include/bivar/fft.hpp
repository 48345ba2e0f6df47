#pragma once

#include <complex>
#include <vector>

namespace bivar::detail {

using cplx = std::complex<double>;

// In-place unnormalized DFT: a[k] <- sum_n a[n] exp(sign * 2 pi i k n / N).
// Radix-2 for power-of-two sizes, Bluestein otherwise; any N >= 1.
void fft(std::vector<cplx>& a, int sign);

inline void fft_forward(std::vector<cplx>& a) { fft(a, -1); }
inline void fft_inverse_unnormalized(std::vector<cplx>& a) { fft(a, +1); }

}  // namespace bivar::detail
