#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bivar/quaternion.hpp"

namespace bivar {

/**
 * Uniformly sampled bivariate signal x(t) = x1(t) + i x2(t), stored as the
 * two real channels plus the sample period.
 */
struct BivariateSignal {
    std::vector<double> x1;
    std::vector<double> x2;
    double dt = 1.0;

    BivariateSignal() = default;
    BivariateSignal(std::vector<double> a, std::vector<double> b, double dt_ = 1.0)
        : x1(std::move(a)), x2(std::move(b)), dt(dt_) {
        if (x1.size() != x2.size())
            throw std::invalid_argument("BivariateSignal: channel length mismatch");
    }

    size_t size() const { return x1.size(); }

    Quaternion sample(size_t n) const { return {x1[n], x2[n], 0.0, 0.0}; }

    // |x[n]|^2 summed over the record
    double energy() const {
        double e = 0.0;
        for (size_t n = 0; n < x1.size(); ++n) e += x1[n] * x1[n] + x2[n] * x2[n];
        return e;
    }
};

/**
 * Quaternion-valued spectrum on the natural DFT grid k/(N dt), k = 0..N-1,
 * upper half addressed as negative frequencies. Spectra of bivariate signals
 * satisfy the i-Hermitian symmetry X[N-k] = involution(X[k], i).
 */
struct QSpectrum {
    std::vector<Quaternion> bins;
    double dt = 1.0;

    size_t size() const { return bins.size(); }

    // Frequency of bin k in cycles per unit time, negative for k > N/2.
    double freq(size_t k) const {
        const double n = static_cast<double>(bins.size());
        double f = static_cast<double>(k);
        if (f > n / 2.0) f -= n;
        return f / (n * dt);
    }

    // The two C_j channels of the complex-pair representation.
    std::vector<std::complex<double>> channel1() const {
        std::vector<std::complex<double>> c(bins.size());
        for (size_t k = 0; k < bins.size(); ++k) c[k] = {bins[k].w, bins[k].y};
        return c;
    }
    std::vector<std::complex<double>> channel2() const {
        std::vector<std::complex<double>> c(bins.size());
        for (size_t k = 0; k < bins.size(); ++k) c[k] = {bins[k].x, bins[k].z};
        return c;
    }

    static QSpectrum from_channels(const std::vector<std::complex<double>>& c1,
                                   const std::vector<std::complex<double>>& c2,
                                   double dt) {
        if (c1.size() != c2.size())
            throw std::invalid_argument("QSpectrum: channel length mismatch");
        QSpectrum s;
        s.dt = dt;
        s.bins.resize(c1.size());
        for (size_t k = 0; k < c1.size(); ++k)
            s.bins[k] = {c1[k].real(), c2[k].real(), c1[k].imag(), c2[k].imag()};
        return s;
    }
};

// Number of nonnegative-frequency bins (DC..Nyquist) of an N-point grid.
inline size_t half_grid_size(size_t n) { return n / 2 + 1; }

}  // namespace bivar
