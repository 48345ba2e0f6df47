#include "bivar/fft.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace bivar::detail {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Iterative radix-2 Cooley-Tukey with a per-size twiddle table.
struct Radix2Plan {
    size_t n;
    std::vector<cplx> twiddle;  // exp(-2 pi i k / n), k < n/2
    std::vector<size_t> rev;

    explicit Radix2Plan(size_t n_) : n(n_), rev(n_) {
        twiddle.resize(n / 2);
        for (size_t k = 0; k < n / 2; ++k) {
            const double ang = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
            twiddle[k] = {std::cos(ang), std::sin(ang)};
        }
        size_t lg = 0;
        while ((size_t{1} << lg) < n) ++lg;
        for (size_t i = 0; i < n; ++i) {
            size_t r = 0;
            for (size_t b = 0; b < lg; ++b)
                if (i & (size_t{1} << b)) r |= size_t{1} << (lg - 1 - b);
            rev[i] = r;
        }
    }

    void run(std::vector<cplx>& a, int sign) const {
        for (size_t i = 0; i < n; ++i)
            if (i < rev[i]) std::swap(a[i], a[rev[i]]);
        for (size_t len = 2; len <= n; len <<= 1) {
            const size_t step = n / len;
            for (size_t blk = 0; blk < n; blk += len) {
                for (size_t k = 0; k < len / 2; ++k) {
                    cplx tw = twiddle[k * step];
                    if (sign > 0) tw = std::conj(tw);
                    const cplx u = a[blk + k];
                    const cplx v = a[blk + k + len / 2] * tw;
                    a[blk + k] = u + v;
                    a[blk + k + len / 2] = u - v;
                }
            }
        }
    }
};

// Bluestein chirp-z plan for arbitrary N, convolving through a 2^m FFT.
struct BluesteinPlan {
    size_t n;
    size_t m;                       // padded power-of-two size >= 2n-1
    std::vector<cplx> chirp;        // exp(-i pi k^2 / n), k < n
    std::vector<cplx> kernel_fft;   // FFT of conj(chirp) wrapped, length m
    std::shared_ptr<const Radix2Plan> pad_plan;

    BluesteinPlan(size_t n_, std::shared_ptr<const Radix2Plan> plan)
        : n(n_), m(plan->n), chirp(n_), pad_plan(std::move(plan)) {
        for (size_t k = 0; k < n; ++k) {
            // k^2 mod 2n keeps the chirp angle accurate for large k
            const size_t k2 = (k * k) % (2 * n);
            const double ang = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
            chirp[k] = {std::cos(ang), std::sin(ang)};
        }
        std::vector<cplx> b(m, cplx{0.0, 0.0});
        b[0] = std::conj(chirp[0]);
        for (size_t k = 1; k < n; ++k) {
            b[k] = std::conj(chirp[k]);
            b[m - k] = std::conj(chirp[k]);
        }
        pad_plan->run(b, -1);
        kernel_fft = std::move(b);
    }

    void run(std::vector<cplx>& x, int sign) const {
        std::vector<cplx> a(m, cplx{0.0, 0.0});
        if (sign < 0) {
            for (size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
        } else {
            for (size_t k = 0; k < n; ++k) a[k] = x[k] * std::conj(chirp[k]);
        }
        pad_plan->run(a, -1);
        if (sign < 0) {
            for (size_t k = 0; k < m; ++k) a[k] *= kernel_fft[k];
        } else {
            for (size_t k = 0; k < m; ++k) a[k] *= std::conj(kernel_fft[k]);
        }
        // unnormalized inverse of the pad-size transform
        pad_plan->run(a, +1);
        const double scale = 1.0 / static_cast<double>(m);
        if (sign < 0) {
            for (size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k] * scale;
        } else {
            for (size_t k = 0; k < n; ++k) x[k] = a[k] * std::conj(chirp[k]) * scale;
        }
    }
};

std::shared_ptr<const Radix2Plan> radix2_plan(size_t n) {
    static std::mutex mu;
    static std::unordered_map<size_t, std::shared_ptr<const Radix2Plan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto plan = std::make_shared<const Radix2Plan>(n);
    cache.emplace(n, plan);
    return plan;
}

std::shared_ptr<const BluesteinPlan> bluestein_plan(size_t n) {
    static std::mutex mu;
    static std::unordered_map<size_t, std::shared_ptr<const BluesteinPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto plan = std::make_shared<const BluesteinPlan>(n, radix2_plan(next_pow2(2 * n - 1)));
    cache.emplace(n, plan);
    return plan;
}

}  // namespace

void fft(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    if (n <= 1) return;
    if (is_pow2(n)) {
        radix2_plan(n)->run(a, sign);
    } else {
        bluestein_plan(n)->run(a, sign);
    }
}

}  // namespace bivar::detail
