#pragma once

#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bivar/quaternion.hpp"
#include "bivar/signal.hpp"

namespace bivar::testutil {

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double gauss(std::mt19937_64& g) {
    return std::normal_distribution<double>(0.0, 1.0)(g);
}

inline Quaternion random_quat(std::mt19937_64& g) {
    return {gauss(g), gauss(g), gauss(g), gauss(g)};
}

inline PureUnit random_axis(std::mt19937_64& g) {
    while (true) {
        const double a = gauss(g), b = gauss(g), c = gauss(g);
        if (a * a + b * b + c * c > 1e-6) return PureUnit(a, b, c);
    }
}

inline std::complex<double> random_cplx(std::mt19937_64& g) {
    return {gauss(g), gauss(g)};
}

inline BivariateSignal random_signal(std::mt19937_64& g, size_t n, double dt = 1.0) {
    BivariateSignal s;
    s.dt = dt;
    s.x1.resize(n);
    s.x2.resize(n);
    for (size_t i = 0; i < n; ++i) {
        s.x1[i] = gauss(g);
        s.x2[i] = gauss(g);
    }
    return s;
}

// Direct O(N^2) quaternion DFT: bin k = sum_n x[n] exp(-j 2 pi k n / N).
// Independent of the FFT path; used as the transform oracle.
inline std::vector<Quaternion> dft_oracle(const BivariateSignal& x) {
    const size_t n = x.size();
    std::vector<Quaternion> bins(n);
    for (size_t k = 0; k < n; ++k) {
        Quaternion acc;
        for (size_t m = 0; m < n; ++m) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) *
                               static_cast<double>(m) / static_cast<double>(n);
            acc += x.sample(m) * exp_pure(PureUnit::unit_j(), ang);
        }
        bins[k] = acc;
    }
    return bins;
}

inline double rel_err(const Quaternion& got, const Quaternion& want, double floor_ = 1e-30) {
    const double scale = std::max(want.norm(), floor_);
    return (got - want).norm() / scale;
}

}  // namespace bivar::testutil
