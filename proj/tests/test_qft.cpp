#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bivar/qft.hpp"
#include "test_util.hpp"

using namespace bivar;
using namespace bivar::testutil;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("matches the direct DFT summation oracle") {
    auto g = make_rng(21);
    for (size_t n : {size_t{7}, size_t{12}, size_t{64}, size_t{255}}) {
        const BivariateSignal x = random_signal(g, n);
        const QSpectrum X = qft_forward(x);
        const auto oracle = dft_oracle(x);
        double scale = 0.0;
        for (const auto& q : oracle) scale = std::max(scale, q.norm());
        for (size_t k = 0; k < n; ++k)
            CHECK((X.bins[k] - oracle[k]).norm() <= 1e-10 * scale);
    }
}

TEST_CASE("cosine line lands on the expected bins") {
    const size_t n = 64, k0 = 4;
    BivariateSignal x;
    x.x1.resize(n);
    x.x2.assign(n, 0.0);
    for (size_t m = 0; m < n; ++m)
        x.x1[m] = std::cos(2.0 * kPi * static_cast<double>(m * k0) / static_cast<double>(n));
    const QSpectrum X = qft_forward(x);
    for (size_t k = 0; k < n; ++k) {
        if (k == k0 || k == n - k0) {
            CHECK((X.bins[k] - Quaternion{32.0, 0, 0, 0}).norm() <= 1e-9);
        } else {
            CHECK(X.bins[k].norm() <= 1e-9);
        }
    }
}

TEST_CASE("zero signal gives zero spectrum") {
    BivariateSignal x;
    x.x1.assign(16, 0.0);
    x.x2.assign(16, 0.0);
    const QSpectrum X = qft_forward(x);
    for (const auto& q : X.bins) CHECK(q.norm() == 0.0);
}

TEST_CASE("empty input rejected") {
    CHECK_THROWS_WITH_AS(qft_forward(BivariateSignal{}), "qft_forward: empty input",
                         std::invalid_argument);
}

TEST_CASE("i-Hermitian symmetry of bivariate spectra") {
    auto g = make_rng(22);
    for (size_t n : {size_t{33}, size_t{64}, size_t{100}}) {
        const QSpectrum X = qft_forward(random_signal(g, n));
        CHECK(ihermitian_violation(X) <= 1e-12);
    }
}

TEST_CASE("round trip identity") {
    auto g = make_rng(23);
    for (size_t n : {size_t{1}, size_t{2}, size_t{128}, size_t{255}, size_t{1 << 16}}) {
        const BivariateSignal x = random_signal(g, n, 0.5);
        const InverseResult r = qft_inverse(qft_forward(x));
        CHECK(!r.non_bivariate);
        double scale = 0.0, err = 0.0;
        for (size_t m = 0; m < n; ++m) {
            scale = std::max({scale, std::abs(x.x1[m]), std::abs(x.x2[m])});
            err = std::max({err, std::abs(r.signal.x1[m] - x.x1[m]),
                            std::abs(r.signal.x2[m] - x.x2[m])});
        }
        CHECK(err <= 1e-12 * scale);
        CHECK(r.signal.dt == x.dt);
    }
}

TEST_CASE("delta spectrum at DC gives a constant signal") {
    QSpectrum X;
    X.bins.assign(32, Quaternion{});
    X.bins[0] = {32.0, 0, 0, 0};
    const InverseResult r = qft_inverse(X);
    CHECK(!r.non_bivariate);
    for (size_t m = 0; m < 32; ++m) {
        CHECK(r.signal.x1[m] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(r.signal.x2[m]) <= 1e-12);
    }
}

TEST_CASE("broken symmetry raises the non-bivariate flag") {
    auto g = make_rng(24);
    QSpectrum X = qft_forward(random_signal(g, 64));
    X.bins[64 - 5] = {};  // zero one negative-frequency bin
    const InverseResult r = qft_inverse(X);
    CHECK(r.non_bivariate);
    CHECK(r.offplane_fraction > 1e-8);
}

TEST_CASE("linearity") {
    auto g = make_rng(25);
    const size_t n = 96;
    const BivariateSignal a = random_signal(g, n), b = random_signal(g, n);
    BivariateSignal combo;
    combo.x1.resize(n);
    combo.x2.resize(n);
    for (size_t m = 0; m < n; ++m) {
        combo.x1[m] = 2.5 * a.x1[m] - 0.75 * b.x1[m];
        combo.x2[m] = 2.5 * a.x2[m] - 0.75 * b.x2[m];
    }
    const QSpectrum A = qft_forward(a), B = qft_forward(b), C = qft_forward(combo);
    for (size_t k = 0; k < n; ++k) {
        const Quaternion want = 2.5 * A.bins[k] - 0.75 * B.bins[k];
        CHECK((C.bins[k] - want).norm() <= 1e-11 * std::max(1.0, want.norm()));
    }
}

TEST_CASE("parseval invariants conserved") {
    auto g = make_rng(26);
    for (size_t n : {size_t{65}, size_t{128}, size_t{1000}}) {
        const BivariateSignal x = random_signal(g, n, 0.25);
        const ParsevalInvariants t = parseval_invariants(x);
        const ParsevalInvariants f = parseval_invariants(qft_forward(x));
        CHECK(std::abs(t.energy - f.energy) <= 1e-10 * t.energy);
        double pscale = 0.0;
        for (int c = 0; c < 3; ++c) pscale = std::max(pscale, std::abs(t.polar[c]));
        pscale = std::max(pscale, t.energy);
        for (int c = 0; c < 3; ++c)
            CHECK(std::abs(t.polar[c] - f.polar[c]) <= 1e-10 * pscale);
    }
}

TEST_CASE("horizontal signals have a fixed polar direction") {
    auto g = make_rng(27);
    for (int t = 0; t < 10; ++t) {
        BivariateSignal x = random_signal(g, 50);
        x.x2.assign(50, 0.0);
        const ParsevalInvariants inv = parseval_invariants(x);
        // x j conj(x) = x1^2 j for x2 = 0: the invariant points along +j
        CHECK(inv.polar[0] == 0.0);
        CHECK(inv.polar[2] == 0.0);
        CHECK(inv.polar[1] == doctest::Approx(inv.energy));
    }
}

TEST_CASE("even-N Nyquist bin satisfies its own mirror constraint") {
    auto g = make_rng(28);
    const QSpectrum X = qft_forward(random_signal(g, 64));
    const Quaternion nyq = X.bins[32];
    CHECK((nyq - involution(nyq, Axis::I)).norm() <= 1e-10 * std::max(1.0, nyq.norm()));
}
