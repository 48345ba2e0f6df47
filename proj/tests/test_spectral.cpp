#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bivar/spectral.hpp"
#include "bivar/synthesis.hpp"
#include "test_util.hpp"

using namespace bivar;
using namespace bivar::testutil;

TEST_CASE("horizontal signals give a density along +j") {
    auto g = make_rng(31);
    BivariateSignal x = random_signal(g, 64);
    x.x2.assign(64, 0.0);
    const auto dens = density_from_spectrum(qft_forward(x));
    for (const Quaternion& q : dens) {
        CHECK(q.w >= 0.0);
        CHECK(std::abs(q.x) <= 1e-12 * std::max(1.0, q.w));
        CHECK(std::abs(q.z) <= 1e-12 * std::max(1.0, q.w));
        CHECK(q.y >= -1e-12);
    }
}

TEST_CASE("zero spectrum gives zero density") {
    QSpectrum X;
    X.bins.assign(8, Quaternion{});
    for (const Quaternion& q : density_from_spectrum(X)) CHECK(q.norm() == 0.0);
}

TEST_CASE("vector part never exceeds scalar part") {
    auto g = make_rng(32);
    for (int t = 0; t < 20; ++t) {
        const auto dens = density_from_spectrum(qft_forward(random_signal(g, 48)));
        for (const Quaternion& q : dens)
            CHECK(q.vector().norm() <= q.w * (1.0 + 1e-12) + 1e-300);
    }
}

TEST_CASE("density scaling matches average power") {
    auto g = make_rng(33);
    const BivariateSignal x = random_signal(g, 200, 0.125);
    const auto dens = density_from_spectrum(qft_forward(x));
    double integral = 0.0;  // sum S0 times bin spacing 1/(N dt)
    for (const Quaternion& q : dens) integral += q.w;
    integral /= static_cast<double>(x.size()) * x.dt;
    CHECK(integral == doctest::Approx(x.energy() / static_cast<double>(x.size())).epsilon(1e-10));
}

TEST_CASE("decompose_density read-offs") {
    const PureUnit mu0(0.3, -0.8, 0.52);
    const Quaternion g = Quaternion{1, 0, 0, 0} + 0.7 * mu0.quat();
    const DensityBin b = decompose_density(g);
    CHECK(b.s0 == doctest::Approx(1.0));
    CHECK(b.phi == doctest::Approx(0.7));
    REQUIRE(b.mu.has_value());
    CHECK(inner3(*b.mu, mu0) == doctest::Approx(1.0));

    // purely scalar density is unpolarized with no axis
    const DensityBin u = decompose_density({2.5, 0, 0, 0});
    CHECK(u.s0 == doctest::Approx(2.5));
    CHECK(u.phi == 0.0);
    CHECK(!u.mu.has_value());

    // fully polarized
    const DensityBin p = decompose_density(Quaternion{3, 0, 0, 0} + 3.0 * mu0.quat());
    CHECK(p.phi == doctest::Approx(1.0));
}

TEST_CASE("decompose_density rejects nonphysical input") {
    CHECK_THROWS_AS(decompose_density({1.0, 0.0, 1.0 + 1e-6, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(decompose_density({-1.0, 0, 0, 0}), std::invalid_argument);
    // tolerated floating-point overshoot clips to 1
    const DensityBin b = decompose_density({1.0, 0.0, 1.0 + 1e-10, 0.0});
    CHECK(b.phi == 1.0);
}

TEST_CASE("stokes mapping") {
    DensityBin b;
    b.s0 = 2.0;
    b.phi = 1.0;
    b.mu = PureUnit::unit_j();
    const StokesParams s = stokes_from_bin(b);
    CHECK(s.s0 == doctest::Approx(2.0));
    CHECK(s.s1 == doctest::Approx(2.0));
    CHECK(s.s2 == doctest::Approx(0.0));
    CHECK(s.s3 == doctest::Approx(0.0));

    // circular axis i carries S3 = S0 Phi
    b.mu = PureUnit::unit_i();
    b.phi = 0.6;
    const StokesParams c = stokes_from_bin(b);
    CHECK(c.s3 == doctest::Approx(1.2));
    CHECK(c.s1 == doctest::Approx(0.0));
    CHECK(c.s2 == doctest::Approx(0.0));

    auto g = make_rng(34);
    for (int t = 0; t < 100; ++t) {
        DensityBin d;
        d.s0 = uniform(g, 0.1, 5.0);
        d.phi = uniform(g, 0.0, 1.0);
        if (d.phi >= kPolarizationEps) d.mu = random_axis(g);
        const DensityBin back = bin_from_stokes(stokes_from_bin(d));
        CHECK(back.s0 == doctest::Approx(d.s0).epsilon(1e-12));
        CHECK(back.phi == doctest::Approx(d.phi).epsilon(1e-12));
        if (d.mu && d.phi > 1e-6) CHECK(inner3(*back.mu, *d.mu) == doctest::Approx(1.0));
    }
}

TEST_CASE("up_split") {
    PolarizationDensity d = PolarizationDensity::with_size(3);
    d.s0 = {1.0, 2.0, 0.5};
    d.phi = {0.0, 1.0, 0.7};
    d.mu = {std::nullopt, PureUnit::unit_k(), PureUnit(1, 1, 0)};

    const UPSplit sp = up_split(d);
    CHECK(sp.polarized.s0[0] == 0.0);
    CHECK(sp.unpolarized.s0[1] == 0.0);
    CHECK(sp.unpolarized.s0[2] == doctest::Approx(0.5 * 0.3));
    CHECK(sp.polarized.s0[2] == doctest::Approx(0.5 * 0.7));
    CHECK(sp.polarized.phi[2] == 1.0);

    for (size_t k = 0; k < 3; ++k) {
        const Quaternion sum = sp.unpolarized.bin_quat(k) + sp.polarized.bin_quat(k);
        CHECK((sum - d.bin_quat(k)).norm() <= 1e-14 * std::max(1.0, d.s0[k]));
    }
}

TEST_CASE("estimator on a single signal equals its periodogram") {
    auto g = make_rng(35);
    const BivariateSignal x = random_signal(g, 40, 2.0);
    const PolarizationDensity d = estimate_density({x});
    const auto dens = density_from_spectrum(qft_forward(x));
    for (size_t k = 0; k < 40; ++k)
        CHECK((d.bin_quat(k) - dens[k]).norm() <= 1e-13 * std::max(1.0, dens[k].norm()));
}

TEST_CASE("estimator rejects mismatched lengths") {
    auto g = make_rng(36);
    CHECK_THROWS_AS(estimate_density({random_signal(g, 8), random_signal(g, 9)}),
                    std::invalid_argument);
}

TEST_CASE("unpolarized white noise estimate converges") {
    const size_t r = 400, n = 256;
    const double sigma0sq = 2.0;
    std::vector<BivariateSignal> reals;
    reals.reserve(r);
    const WhiteNoiseSpec spec =
        WhiteNoiseSpec::channels(std::sqrt(sigma0sq / 2), std::sqrt(sigma0sq / 2), 0.0);
    for (size_t i = 0; i < r; ++i) reals.push_back(white_noise(spec, n, 9000 + i));
    const PolarizationDensity d = estimate_density(reals);

    double mean_s0 = 0.0, mean_phi = 0.0;
    for (size_t k = 0; k < n; ++k) {
        mean_s0 += d.s0[k];
        mean_phi += d.phi[k];
    }
    mean_s0 /= static_cast<double>(n);
    mean_phi /= static_cast<double>(n);
    CHECK(mean_s0 == doctest::Approx(sigma0sq).epsilon(0.02));
    CHECK(mean_phi < 0.1);
}

TEST_CASE("density symmetry across the grid") {
    auto g = make_rng(37);
    const PolarizationDensity d =
        estimate_density({random_signal(g, 65), random_signal(g, 65)});
    const size_t n = 65;
    for (size_t k = 1; k < n; ++k) {
        const size_t m = n - k;
        CHECK(d.s0[m] == doctest::Approx(d.s0[k]).epsilon(1e-10));
        CHECK(d.phi[m] == doctest::Approx(d.phi[k]).epsilon(1e-9));
        if (d.mu[k] && d.phi[k] > 1e-6) {
            REQUIRE(d.mu[m].has_value());
            // density axes mirror with the i component flipped and j, k kept
            CHECK(inner3(*d.mu[m], -involution(*d.mu[k], Axis::I)) ==
                  doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}
