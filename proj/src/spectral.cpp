#include "bivar/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace bivar {

std::vector<Quaternion> density_from_spectrum(const QSpectrum& X) {
    const size_t n = X.size();
    const double scale = X.dt / static_cast<double>(n);
    std::vector<Quaternion> out(n);
    for (size_t k = 0; k < n; ++k) {
        const Quaternion& q = X.bins[k];
        Quaternion g = q * Quaternion::unit_j() * q.conj();
        g.w = q.norm_sq();
        out[k] = g * scale;
    }
    return out;
}

DensityBin decompose_density(const Quaternion& g) {
    const double s0 = g.w;
    if (s0 < 0.0) throw std::invalid_argument("decompose_density: negative scalar part");
    const Quaternion v = g.vector();
    const double vnorm = v.norm();
    if (s0 == 0.0) {
        if (vnorm > 0.0)
            throw std::invalid_argument("decompose_density: nonphysical density");
        return {};
    }
    double phi = vnorm / s0;
    if (phi > 1.0 + 1e-9)
        throw std::invalid_argument("decompose_density: nonphysical density");
    if (phi > 1.0) phi = 1.0;
    DensityBin b;
    b.s0 = s0;
    b.phi = phi;
    // normalize before constructing so absolutely tiny vectors with a well
    // defined direction are still accepted
    if (phi >= kPolarizationEps)
        b.mu = PureUnit(v.x / vnorm, v.y / vnorm, v.z / vnorm);
    return b;
}

PolarizationDensity decompose_density(const std::vector<Quaternion>& bins) {
    PolarizationDensity d;
    d.s0.reserve(bins.size());
    d.phi.reserve(bins.size());
    d.mu.reserve(bins.size());
    for (const Quaternion& g : bins) d.push_back(decompose_density(g));
    return d;
}

StokesParams stokes_from_bin(const DensityBin& b) {
    StokesParams s;
    s.s0 = b.s0;
    if (b.mu) {
        const double m = b.phi * b.s0;
        s.s1 = m * b.mu->y;
        s.s2 = m * b.mu->z;
        s.s3 = m * b.mu->x;
    }
    return s;
}

DensityBin bin_from_stokes(const StokesParams& s) {
    return decompose_density({s.s0, s.s3, s.s1, s.s2});
}

UPSplit up_split(const PolarizationDensity& d) {
    UPSplit out;
    const size_t n = d.size();
    out.unpolarized = PolarizationDensity::with_size(n);
    out.polarized = PolarizationDensity::with_size(n);
    for (size_t k = 0; k < n; ++k) {
        out.unpolarized.s0[k] = (1.0 - d.phi[k]) * d.s0[k];
        const double p = d.phi[k] * d.s0[k];
        out.polarized.s0[k] = p;
        if (p > 0.0 && d.mu[k]) {
            out.polarized.phi[k] = 1.0;
            out.polarized.mu[k] = d.mu[k];
        }
    }
    return out;
}

namespace {

// Pairwise sum of per-realization densities over [lo, hi).
std::vector<Quaternion> pairwise_density_sum(const std::vector<const BivariateSignal*>& xs,
                                             size_t lo, size_t hi) {
    if (hi - lo == 1) {
        const QSpectrum X = qft_forward(*xs[lo]);
        return density_from_spectrum(X);
    }
    const size_t mid = lo + (hi - lo) / 2;
    std::vector<Quaternion> a = pairwise_density_sum(xs, lo, mid);
    const std::vector<Quaternion> b = pairwise_density_sum(xs, mid, hi);
    for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return a;
}

}  // namespace

std::vector<Quaternion> estimate_density_quat(const std::vector<BivariateSignal>& realizations) {
    if (realizations.empty())
        throw std::invalid_argument("estimate_density: no realizations");
    const size_t n = realizations.front().size();
    std::vector<const BivariateSignal*> ptrs;
    ptrs.reserve(realizations.size());
    for (const BivariateSignal& x : realizations) {
        if (x.size() != n)
            throw std::invalid_argument("estimate_density: realization length mismatch");
        ptrs.push_back(&x);
    }
    std::vector<Quaternion> sum = pairwise_density_sum(ptrs, 0, ptrs.size());
    const double inv_r = 1.0 / static_cast<double>(ptrs.size());
    for (Quaternion& q : sum) q *= inv_r;
    return sum;
}

PolarizationDensity estimate_density(const std::vector<BivariateSignal>& realizations) {
    return decompose_density(estimate_density_quat(realizations));
}

PolarizationDensity extend_to_full_grid(const PolarizationDensity& half, size_t n) {
    const size_t h = n / 2 + 1;
    if (half.size() != h)
        throw std::invalid_argument("extend_to_full_grid: half grid does not match N");
    PolarizationDensity full = PolarizationDensity::with_size(n);
    for (size_t k = 0; k < h; ++k) {
        full.s0[k] = half.s0[k];
        full.phi[k] = half.phi[k];
        full.mu[k] = half.mu[k];
    }
    for (size_t k = h; k < n; ++k) {
        const size_t m = n - k;
        full.s0[k] = half.s0[m];
        full.phi[k] = half.phi[m];
        if (half.mu[m]) full.mu[k] = -involution(*half.mu[m], Axis::I);
    }
    return full;
}

PolarizationDensity restrict_to_half_grid(const PolarizationDensity& full) {
    const size_t h = full.size() / 2 + 1;
    PolarizationDensity half = PolarizationDensity::with_size(h);
    for (size_t k = 0; k < h; ++k) {
        half.s0[k] = full.s0[k];
        half.phi[k] = full.phi[k];
        half.mu[k] = full.mu[k];
    }
    return half;
}

}  // namespace bivar
