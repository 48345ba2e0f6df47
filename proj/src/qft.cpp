#include "bivar/qft.hpp"

#include <algorithm>
#include <cmath>

#include "bivar/fft.hpp"

namespace bivar {

using detail::cplx;

QSpectrum qft_forward(const BivariateSignal& x) {
    const size_t n = x.size();
    if (n == 0) throw std::invalid_argument("qft_forward: empty input");
    std::vector<cplx> c1(n), c2(n);
    for (size_t i = 0; i < n; ++i) {
        c1[i] = {x.x1[i], 0.0};
        c2[i] = {x.x2[i], 0.0};
    }
    detail::fft_forward(c1);
    detail::fft_forward(c2);
    return QSpectrum::from_channels(c1, c2, x.dt);
}

InverseResult qft_inverse(const QSpectrum& X) {
    const size_t n = X.size();
    if (n == 0) throw std::invalid_argument("qft_inverse: empty spectrum");
    std::vector<cplx> c1 = X.channel1();
    std::vector<cplx> c2 = X.channel2();
    detail::fft_inverse_unnormalized(c1);
    detail::fft_inverse_unnormalized(c2);

    InverseResult out;
    out.signal.dt = X.dt;
    out.signal.x1.resize(n);
    out.signal.x2.resize(n);
    const double scale = 1.0 / static_cast<double>(n);
    double plane = 0.0, off = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double a = c1[i].real() * scale;  // scalar part
        const double b = c2[i].real() * scale;  // i part
        const double c = c1[i].imag() * scale;  // j part
        const double d = c2[i].imag() * scale;  // k part
        out.signal.x1[i] = a;
        out.signal.x2[i] = b;
        plane += a * a + b * b;
        off += c * c + d * d;
    }
    const double total = plane + off;
    out.offplane_fraction = total > 0.0 ? off / total : 0.0;
    out.non_bivariate = out.offplane_fraction > 1e-8;
    return out;
}

ParsevalInvariants parseval_invariants(const BivariateSignal& x) {
    ParsevalInvariants inv;
    for (size_t n = 0; n < x.size(); ++n) {
        const double u = x.x1[n];
        const double v = x.x2[n];
        inv.energy += u * u + v * v;
        // x j conj(x) = (u^2 - v^2) j + 2 u v k for x = u + i v
        inv.polar[1] += u * u - v * v;
        inv.polar[2] += 2.0 * u * v;
    }
    inv.energy *= x.dt;
    for (double& p : inv.polar) p *= x.dt;
    return inv;
}

ParsevalInvariants parseval_invariants(const QSpectrum& X) {
    ParsevalInvariants inv;
    for (const Quaternion& q : X.bins) {
        inv.energy += q.norm_sq();
        const Quaternion p = q * Quaternion::unit_j() * q.conj();
        inv.polar[0] += p.x;
        inv.polar[1] += p.y;
        inv.polar[2] += p.z;
    }
    const double scale = X.dt / static_cast<double>(X.size());
    inv.energy *= scale;
    for (double& p : inv.polar) p *= scale;
    return inv;
}

double ihermitian_violation(const QSpectrum& X) {
    const size_t n = X.size();
    double scale = 0.0;
    for (const Quaternion& q : X.bins) scale = std::max(scale, q.norm());
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const size_t m = (n - k) % n;
        const Quaternion diff = X.bins[m] - involution(X.bins[k], Axis::I);
        worst = std::max(worst, diff.norm() / scale);
    }
    return worst;
}

}  // namespace bivar
