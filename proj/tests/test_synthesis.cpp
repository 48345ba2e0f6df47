#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bivar/qft.hpp"
#include "bivar/synthesis.hpp"
#include "test_util.hpp"

using namespace bivar;
using namespace bivar::testutil;

namespace {

// Gaussian-bump target: S0 peaks at nu0 with width sigma_b (normalized
// frequency), constant Phi and axis in the band.
SynthesisTarget bump_target(size_t n, double nu0, double sigma_b, double phi,
                            const PureUnit& mu) {
    SynthesisTarget t;
    const size_t h = half_grid_size(n);
    t.half = PolarizationDensity::with_size(h);
    for (size_t k = 0; k < h; ++k) {
        const double nu = static_cast<double>(k) / static_cast<double>(n);
        const double dev = (nu - nu0) / sigma_b;
        t.half.s0[k] = std::exp(-0.5 * dev * dev);
        if (phi >= kPolarizationEps) {
            t.half.phi[k] = phi;
            t.half.mu[k] = mu;
        }
    }
    return t;
}

double mean(const std::vector<double>& v, size_t lo, size_t hi) {
    double s = 0.0;
    for (size_t k = lo; k < hi; ++k) s += v[k];
    return s / static_cast<double>(hi - lo);
}

}  // namespace

TEST_CASE("seeded determinism") {
    const WhiteNoiseSpec spec = WhiteNoiseSpec::channels(1.0, 2.0, 0.3);
    const BivariateSignal a = white_noise(spec, 64, 42);
    const BivariateSignal b = white_noise(spec, 64, 42);
    const BivariateSignal c = white_noise(spec, 64, 43);
    CHECK(a.x1 == b.x1);
    CHECK(a.x2 == b.x2);
    CHECK(a.x1 != c.x1);
}

TEST_CASE("white noise spec validation") {
    CHECK_THROWS_AS(WhiteNoiseSpec::channels(-1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(WhiteNoiseSpec::channels(1.0, 1.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(WhiteNoiseSpec::polarized(0.0, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(WhiteNoiseSpec::polarized(1.0, 1.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(WhiteNoiseSpec::polarized(1.0, 0.5, 3.0), std::invalid_argument);
}

TEST_CASE("channel-form white noise matches its closed-form density") {
    const size_t r = 400, n = 128;
    const WhiteNoiseSpec spec = WhiteNoiseSpec::channels(0.9, 0.5, -0.4);
    std::vector<BivariateSignal> reals;
    reals.reserve(r);
    for (size_t i = 0; i < r; ++i) reals.push_back(white_noise(spec, n, 100 + i));
    const auto quats = estimate_density_quat(reals);
    const Quaternion want = spec.expected_density();

    // bin-averaged density against the closed form, three standard errors
    Quaternion avg;
    for (const Quaternion& q : quats) avg += q;
    avg *= 1.0 / static_cast<double>(n);
    const double se = want.w / std::sqrt(static_cast<double>(r) * n / 4.0);
    CHECK(std::abs(avg.w - want.w) <= 3 * se);
    CHECK(std::abs(avg.x - want.x) <= 3 * se);
    CHECK(std::abs(avg.y - want.y) <= 3 * se);
    CHECK(std::abs(avg.z - want.z) <= 3 * se);
}

TEST_CASE("unpolarized (proper) noise has vanishing degree of polarization") {
    const size_t r = 400, n = 256;
    std::vector<BivariateSignal> reals;
    reals.reserve(r);
    for (size_t i = 0; i < r; ++i)
        reals.push_back(white_noise(WhiteNoiseSpec::channels(0.7, 0.7, 0.0), n, 7 * i + 1));
    const PolarizationDensity d = estimate_density(reals);
    CHECK(mean(d.phi, 0, n) < 0.1);
}

TEST_CASE("polarized-form white noise realizes the requested state") {
    const double s0 = 1.7, phi = 0.4, theta = std::numbers::pi / 2;
    const WhiteNoiseSpec spec = WhiteNoiseSpec::polarized(s0, phi, theta);
    // closed form: vertical linear polarization S0 (1 - 0.4 j)
    const Quaternion want = spec.expected_density();
    CHECK(want.w == doctest::Approx(s0));
    CHECK(want.y == doctest::Approx(-phi * s0));
    CHECK(std::abs(want.x) <= 1e-12);
    CHECK(std::abs(want.z) <= 1e-12);

    const size_t r = 400, n = 128;
    std::vector<BivariateSignal> reals;
    reals.reserve(r);
    for (size_t i = 0; i < r; ++i) reals.push_back(white_noise(spec, n, 5000 + i));
    const auto quats = estimate_density_quat(reals);
    Quaternion avg;
    for (const Quaternion& q : quats) avg += q;
    avg *= 1.0 / static_cast<double>(n);
    const double se = s0 / std::sqrt(static_cast<double>(r) * n / 4.0);
    CHECK(std::abs(avg.w - want.w) <= 3 * se);
    CHECK(std::abs(avg.y - want.y) <= 3 * se);
    CHECK(std::abs(avg.x) <= 3 * se);
    CHECK(std::abs(avg.z) <= 3 * se);
}

TEST_CASE("fully polarized noise points along +j for theta = 0") {
    const WhiteNoiseSpec spec = WhiteNoiseSpec::polarized(2.0, 1.0, 0.0);
    const Quaternion want = spec.expected_density();
    CHECK(want.y == doctest::Approx(2.0));
    CHECK(std::abs(want.x) + std::abs(want.z) <= 1e-12);
    // theta = 0 noise lives in the first channel only
    const BivariateSignal w = white_noise(spec, 32, 1);
    for (double v : w.x2) CHECK(v == 0.0);
}

TEST_CASE("synthesis output is real-bivariate and deterministic") {
    const SynthesisTarget t =
        bump_target(256, 0.1, 0.02, 0.6, PureUnit(0.3, 0.5, -0.8));
    const BivariateSignal a = spectral_synthesis(t, 256, 4, 99);
    const BivariateSignal b = spectral_synthesis(t, 256, 4, 99);
    CHECK(a.x1 == b.x1);
    CHECK(a.x2 == b.x2);
    CHECK(a.size() == 256);
    const QSpectrum X = qft_forward(a);
    CHECK(ihermitian_violation(X) <= 1e-10);
}

TEST_CASE("flat unpolarized target reproduces white noise statistics") {
    const size_t n = 128, r = 200;
    SynthesisTarget t;
    t.half = PolarizationDensity::with_size(half_grid_size(n));
    for (auto& v : t.half.s0) v = 2.0;
    std::vector<BivariateSignal> reals;
    reals.reserve(r);
    for (size_t i = 0; i < r; ++i) reals.push_back(spectral_synthesis(t, n, 2, 40 + i));
    const PolarizationDensity d = estimate_density(reals);
    CHECK(mean(d.s0, 0, n) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(mean(d.phi, 0, n) < 0.15);
    double worst = 0.0;
    for (size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(d.s0[k] - 2.0));
    CHECK(worst < 2.0);  // flat within broad Monte-Carlo bounds
}

TEST_CASE("fully polarized target aligns every bin with the axis") {
    const size_t n = 256;
    const PureUnit mu(0.0, 0.6, 0.8);
    const SynthesisTarget t = bump_target(n, 0.12, 0.03, 1.0, mu);
    const BivariateSignal x = spectral_synthesis(t, n, 2, 7);
    const QSpectrum X = qft_forward(x);
    const auto dens = density_from_spectrum(X);
    // in-band bins of a single realization already sit on the axis
    for (size_t k = 0; k < half_grid_size(n); ++k) {
        if (t.half.s0[k] < 0.3) continue;
        const Quaternion v = dens[k].vector();
        if (v.norm() < 1e-9) continue;
        const PureUnit dir(v.x, v.y, v.z);
        CHECK(inner3(dir, mu) == doctest::Approx(1.0).epsilon(1e-9));
    }
    // and the pooled estimate is fully polarized
    std::vector<BivariateSignal> reals;
    for (size_t i = 0; i < 100; ++i) reals.push_back(spectral_synthesis(t, n, 2, 600 + i));
    const PolarizationDensity d = estimate_density(reals);
    const size_t peak = static_cast<size_t>(0.12 * n);
    CHECK(d.phi[peak] > 0.97);
}

TEST_CASE("target validation") {
    SynthesisTarget t;
    t.half = PolarizationDensity::with_size(half_grid_size(64));
    t.half.phi[3] = 1.5;
    CHECK_THROWS_AS(spectral_synthesis(t, 64, 1, 0), std::invalid_argument);
    SynthesisTarget wrong;
    wrong.half = PolarizationDensity::with_size(10);
    CHECK_THROWS_AS(spectral_synthesis(wrong, 64, 1, 0), std::invalid_argument);
}

TEST_CASE("synthesized density estimate matches the target") {
    // small version of the full self-consistency experiment
    const size_t n = 256, r = 150;
    const PureUnit mu(0.55, 0.35, 0.65);
    const SynthesisTarget t = bump_target(n, 0.08, 0.015, 0.7, mu);
    std::vector<BivariateSignal> reals;
    reals.reserve(r);
    for (size_t i = 0; i < r; ++i) reals.push_back(spectral_synthesis(t, n, 4, 2025 + i));
    const PolarizationDensity d = estimate_density(reals);

    // compare over the band where the target carries power
    double num = 0.0, den = 0.0, phi_sum = 0.0;
    Quaternion pooled;
    size_t count = 0;
    for (size_t k = 0; k < half_grid_size(n); ++k) {
        if (t.half.s0[k] < 0.05) continue;
        const double e = d.s0[k] - t.half.s0[k];
        num += e * e;
        den += t.half.s0[k] * t.half.s0[k];
        phi_sum += d.phi[k];
        pooled += d.bin_quat(k);
        ++count;
    }
    CHECK(std::sqrt(num / den) < 0.15);
    CHECK(std::abs(phi_sum / static_cast<double>(count) - 0.7) < 0.08);
    const Quaternion v = pooled.vector();
    CHECK(inner3(PureUnit(v.x, v.y, v.z), mu) > 0.98);
}

TEST_CASE("longer shaping records improve the sample autocovariance") {
    // flat 8-bin band: the M = N line-comb autocovariance recoheres toward
    // lag N while finer combs follow the continuum sinc envelope
    const size_t n = 512;
    SynthesisTarget t;
    t.half = PolarizationDensity::with_size(half_grid_size(n));
    for (size_t k = 48; k < 56; ++k) t.half.s0[k] = 1.0;

    // All oversampling factors shape with the same nearest-bin staircase of
    // the target, so the shared ground truth is the staircase autocovariance
    // r(tau) = sum_k S0[k] * 2 [sin(2 pi b+ tau) - sin(2 pi b- tau)]/(2 pi tau)
    // over the half-grid bins [k/n - 1/2n, k/n + 1/2n].
    const size_t stride = 2, tau_max = 9 * n / 10;
    std::vector<double> truth(tau_max, 0.0);
    for (size_t k = 0; k < half_grid_size(n); ++k) {
        if (t.half.s0[k] < 1e-12) continue;
        const double b_lo = std::max(0.0, (k - 0.5) / static_cast<double>(n));
        const double b_hi = std::min(0.5, (k + 0.5) / static_cast<double>(n));
        for (size_t tau = 0; tau < tau_max; tau += stride) {
            double w;
            if (tau == 0) {
                w = 2.0 * (b_hi - b_lo);
            } else {
                const double a = 2.0 * std::numbers::pi * static_cast<double>(tau);
                w = 2.0 * (std::sin(a * b_hi) - std::sin(a * b_lo)) / a;
            }
            truth[tau] += t.half.s0[k] * w;
        }
    }

    // the noise records for the three factors share their prefix draw per
    // seed, so the estimation noise largely cancels in the comparison
    const size_t r = 150;
    auto acv_error = [&](size_t oversample) {
        std::vector<double> acv(tau_max, 0.0);
        for (size_t i = 0; i < r; ++i) {
            const BivariateSignal x = spectral_synthesis(t, n, oversample, 777 + i);
            for (size_t tau = 0; tau < tau_max; tau += stride) {
                double s = 0.0;
                for (size_t m = 0; m + tau < n; ++m)
                    s += x.x1[m + tau] * x.x1[m] + x.x2[m + tau] * x.x2[m];
                acv[tau] += s / static_cast<double>(n - tau);  // unbiased
            }
        }
        double err = 0.0;
        for (size_t tau = 0; tau < tau_max; tau += stride) {
            const double e = acv[tau] / static_cast<double>(r) - truth[tau];
            err += e * e;
        }
        return std::sqrt(err);
    };

    const double e1 = acv_error(1);
    const double e2 = acv_error(2);
    const double e10 = acv_error(10);
    CHECK(e2 < e1);
    CHECK(e10 < e2);
}
