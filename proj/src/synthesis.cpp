#include "bivar/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bivar/qft.hpp"

namespace bivar {

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (uint64_t& s : s_) s = splitmix64(sm);
}

uint64_t Rng::next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    // 53-bit mantissa in (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(ang);
    have_spare_ = true;
    return r * std::cos(ang);
}

WhiteNoiseSpec WhiteNoiseSpec::channels(double sigma_u, double sigma_v, double rho_uv) {
    if (sigma_u < 0.0 || sigma_v < 0.0)
        throw std::invalid_argument("white noise: channel std devs must be >= 0");
    if (std::abs(rho_uv) > 1.0)
        throw std::invalid_argument("white noise: |rho_uv| must be <= 1");
    WhiteNoiseSpec s;
    s.sigma_u = sigma_u;
    s.sigma_v = sigma_v;
    s.rho_uv = rho_uv;
    return s;
}

WhiteNoiseSpec WhiteNoiseSpec::polarized(double s0, double phi, double theta) {
    if (s0 <= 0.0) throw std::invalid_argument("white noise: S0 must be > 0");
    if (phi < 0.0 || phi > 1.0)
        throw std::invalid_argument("white noise: Phi must be in [0, 1]");
    if (std::abs(theta) > std::numbers::pi / 2 + 1e-12)
        throw std::invalid_argument("white noise: theta must be in [-pi/2, pi/2]");
    WhiteNoiseSpec s;
    s.is_polarized_form = true;
    s.s0w = s0;
    s.phi = phi;
    s.theta = theta;
    return s;
}

WhiteNoiseSpec WhiteNoiseSpec::unpolarized_unit() {
    return channels(std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0, 0.0);
}

Quaternion WhiteNoiseSpec::expected_density(double dt) const {
    if (is_polarized_form) {
        return dt * Quaternion{s0w, 0.0, phi * s0w * std::cos(2.0 * theta),
                               phi * s0w * std::sin(2.0 * theta)};
    }
    const double su2 = sigma_u * sigma_u;
    const double sv2 = sigma_v * sigma_v;
    return dt * Quaternion{su2 + sv2, 0.0, su2 - sv2, 2.0 * rho_uv * sigma_u * sigma_v};
}

BivariateSignal white_noise(const WhiteNoiseSpec& spec, size_t n, uint64_t seed,
                            double dt) {
    Rng rng(seed);
    BivariateSignal w;
    w.dt = dt;
    w.x1.resize(n);
    w.x2.resize(n);
    if (spec.is_polarized_form) {
        // w = sqrt(1-Phi) sqrt(S0) w_u + sqrt(Phi) sqrt(S0) e^{i theta} w_p
        const double au = std::sqrt((1.0 - spec.phi) * spec.s0w) / std::numbers::sqrt2;
        const double ap = std::sqrt(spec.phi * spec.s0w);
        const double ct = std::cos(spec.theta), st = std::sin(spec.theta);
        for (size_t m = 0; m < n; ++m) {
            const double wu1 = rng.gaussian();
            const double wu2 = rng.gaussian();
            const double wp = rng.gaussian();
            w.x1[m] = au * wu1 + ap * ct * wp;
            w.x2[m] = au * wu2 + ap * st * wp;
        }
    } else {
        const double cross = spec.rho_uv;
        const double resid = std::sqrt(std::max(0.0, 1.0 - cross * cross));
        for (size_t m = 0; m < n; ++m) {
            const double g1 = rng.gaussian();
            const double g2 = rng.gaussian();
            w.x1[m] = spec.sigma_u * g1;
            w.x2[m] = spec.sigma_v * (cross * g1 + resid * g2);
        }
    }
    return w;
}

PolarizationDensity resample_target_half(const SynthesisTarget& target, size_t n,
                                         size_t m) {
    const size_t hn = half_grid_size(n);
    if (target.half.size() != hn)
        throw std::invalid_argument("spectral_synthesis: target grid does not match N");
    for (double p : target.half.phi)
        if (p > 1.0) throw std::invalid_argument("spectral_synthesis: Phi > 1 in target");

    const size_t hm = half_grid_size(m);
    PolarizationDensity out = PolarizationDensity::with_size(hm);
    for (size_t k = 0; k < hm; ++k) {
        // nearest bin of the coarse grid: nu = k/m ~ k0/n
        const double pos = static_cast<double>(k) * static_cast<double>(n) /
                           static_cast<double>(m);
        size_t k0 = static_cast<size_t>(std::llround(pos));
        if (k0 >= hn) k0 = hn - 1;
        out.s0[k] = target.half.s0[k0];
        out.phi[k] = target.half.phi[k0];
        out.mu[k] = target.half.mu[k0];
    }
    // Self-mirror bins (DC, Nyquist) carry densities with a linear axis
    // only (no i component); polarized values violating that are dropped to
    // unpolarized so the shaped spectrum stays i-Hermitian.
    auto sanitize = [&out](size_t k) {
        if (!out.mu[k]) return;
        if (std::abs(out.mu[k]->x) > 1e-12) {
            out.phi[k] = 0.0;
            out.mu[k] = std::nullopt;
        }
    };
    sanitize(0);
    if (m % 2 == 0) sanitize(hm - 1);
    return out;
}

BivariateSignal spectral_synthesis(const SynthesisTarget& target, size_t n,
                                   size_t oversample, uint64_t seed) {
    if (n == 0) throw std::invalid_argument("spectral_synthesis: N must be >= 1");
    if (oversample < 1)
        throw std::invalid_argument("spectral_synthesis: oversample must be >= 1");
    const size_t m = n * oversample;
    const PolarizationDensity shaped = resample_target_half(target, n, m);

    // Unit-power unpolarized white noise has flat density dt, so identify the
    // shaping filter against sigma0^2 = dt.
    const BivariateSignal w =
        white_noise(WhiteNoiseSpec::unpolarized_unit(), m, seed, target.dt);
    const HermitianFilterParams filt =
        identify_from_unpolarized_noise(shaped, target.dt);

    const QSpectrum W = qft_forward(w);
    const QSpectrum shaped_spec = apply_hermitian(W, filt);
    const InverseResult inv = qft_inverse(shaped_spec);

    BivariateSignal x;
    x.dt = target.dt;
    x.x1.assign(inv.signal.x1.begin(), inv.signal.x1.begin() + static_cast<long>(n));
    x.x2.assign(inv.signal.x2.begin(), inv.signal.x2.begin() + static_cast<long>(n));
    return x;
}

}  // namespace bivar
