#include "bivar/filters.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bivar {

using cplx = std::complex<double>;

Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}
Mat2 operator*(const Mat2& m, const cplx& s) { return {m.a * s, m.b * s, m.c * s, m.d * s}; }
Mat2 operator+(const Mat2& m, const Mat2& n) {
    return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d};
}
Mat2 operator-(const Mat2& m, const Mat2& n) {
    return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
}

UnitaryParams mirror(const UnitaryParams& p) {
    return {involution(p.axis, Axis::I), p.angle, -p.phase};
}

HermitianParams mirror(const HermitianParams& p) {
    // The trailing j of the Hermitian action flips sign under the i
    // involution, so the mirrored axis is the negated involution: the i
    // component flips, j and k stay. (The unitary mirror has no such flip;
    // its phase factor absorbs the sign.)
    HermitianParams m = p;
    if (m.axis) m.axis = -involution(*m.axis, Axis::I);
    return m;
}

Quaternion apply_unitary_bin(const Quaternion& x, const UnitaryParams& p) {
    return exp_pure(p.axis, 0.5 * p.angle) * x * exp_pure(PureUnit::unit_j(), p.phase);
}

Quaternion apply_hermitian_bin(const Quaternion& x, const HermitianParams& p) {
    Quaternion y = x;
    if (p.eta != 0.0) {
        if (!p.axis)
            throw std::invalid_argument("apply_hermitian: eta > 0 requires an axis");
        y -= p.eta * (p.axis->quat() * x * Quaternion::unit_j());
    }
    return p.gain * y;
}

namespace {

// Visit every full-grid bin with the half-grid parameters extended by the
// symmetry rules: bin k <-> bin N-k.
template <typename Params, typename Fn>
void for_each_extended(size_t n, const std::vector<Params>& half, Fn&& fn) {
    if (half.size() != half_grid_size(n))
        throw std::invalid_argument("filter: parameter grid does not match spectrum length");
    for (size_t k = 0; k < half.size(); ++k) fn(k, half[k]);
    for (size_t k = half.size(); k < n; ++k) fn(k, mirror(half[n - k]));
}

}  // namespace

QSpectrum apply_unitary(const QSpectrum& X, const UnitaryFilterParams& p) {
    QSpectrum Y;
    Y.dt = X.dt;
    Y.bins.resize(X.size());
    for_each_extended(X.size(), p.bins, [&](size_t k, const UnitaryParams& b) {
        Y.bins[k] = apply_unitary_bin(X.bins[k], b);
    });
    return Y;
}

QSpectrum apply_hermitian(const QSpectrum& X, const HermitianFilterParams& p) {
    QSpectrum Y;
    Y.dt = X.dt;
    Y.bins.resize(X.size());
    for_each_extended(X.size(), p.bins, [&](size_t k, const HermitianParams& b) {
        Y.bins[k] = apply_hermitian_bin(X.bins[k], b);
    });
    return Y;
}

DensityBin unitary_density_bin(const DensityBin& d, const UnitaryParams& p) {
    DensityBin out = d;
    if (d.mu) {
        const Quaternion r = exp_pure(p.axis, 0.5 * p.angle);
        const Quaternion rotated = r * d.mu->quat() * r.conj();
        out.mu = PureUnit(rotated.x, rotated.y, rotated.z);
    }
    return out;
}

DensityBin hermitian_density_bin(const DensityBin& d, const HermitianParams& p) {
    const double k2 = p.gain * p.gain;
    if (p.eta == 0.0) {
        DensityBin out = d;
        out.s0 = k2 * d.s0;
        if (out.s0 == 0.0) return {};
        return out;
    }
    if (!p.axis)
        throw std::invalid_argument("hermitian_density_bin: eta > 0 requires an axis");
    const Quaternion mu = p.axis->quat();
    const double align = d.mu ? inner3(*p.axis, *d.mu) : 0.0;
    const double phix = d.mu ? d.phi : 0.0;

    const double s = d.s0 * k2 * (1.0 + p.eta * p.eta + 2.0 * p.eta * phix * align);
    assert(s >= -1e-12 * std::max(1.0, d.s0 * k2));
    Quaternion v = 2.0 * p.eta * mu;
    if (d.mu) {
        const Quaternion mux = d.mu->quat();
        v += phix * (mux - (p.eta * p.eta) * (mu * mux * mu));
    }
    v = d.s0 * k2 * v;
    // near-total extinction (polarizer fed its anti-aligned eigenstate)
    // cancels both parts to rounding noise; snap those bins to zero
    const double scale = d.s0 * k2 * (1.0 + p.eta * p.eta);
    if (s < 1e-13 * scale && v.norm() < 1e-13 * scale) return {};
    return decompose_density({std::max(s, 0.0), v.x, v.y, v.z});
}

PolarizationDensity unitary_density_map(const PolarizationDensity& d,
                                        const UnitaryFilterParams& p) {
    PolarizationDensity out = PolarizationDensity::with_size(d.size());
    for_each_extended(d.size(), p.bins, [&](size_t k, const UnitaryParams& b) {
        const DensityBin r = unitary_density_bin(d.bin(k), b);
        out.s0[k] = r.s0;
        out.phi[k] = r.phi;
        out.mu[k] = r.mu;
    });
    return out;
}

PolarizationDensity hermitian_density_map(const PolarizationDensity& d,
                                          const HermitianFilterParams& p) {
    PolarizationDensity out = PolarizationDensity::with_size(d.size());
    for_each_extended(d.size(), p.bins, [&](size_t k, const HermitianParams& b) {
        const DensityBin r = hermitian_density_bin(d.bin(k), b);
        out.s0[k] = r.s0;
        out.phi[k] = r.phi;
        out.mu[k] = r.mu;
    });
    return out;
}

double gain_bin(const DensityBin& d, const HermitianParams& p) {
    const double align = (d.mu && p.axis) ? inner3(*p.axis, *d.mu) : 0.0;
    const double phix = d.mu ? d.phi : 0.0;
    return p.gain * p.gain * (1.0 + p.eta * p.eta + 2.0 * p.eta * phix * align);
}

std::vector<std::optional<double>> gain(const PolarizationDensity& d,
                                        const HermitianFilterParams& p) {
    std::vector<std::optional<double>> g(d.size());
    for_each_extended(d.size(), p.bins, [&](size_t k, const HermitianParams& b) {
        if (d.s0[k] > 0.0) g[k] = gain_bin(d.bin(k), b);
    });
    return g;
}

GainIdentification identify_from_gain_extrema(double gmax, double gmin) {
    if (gmin < 0.0 || gmax < gmin)
        throw std::invalid_argument("identify_from_gain_extrema: need Gmax >= Gmin >= 0");
    if (gmax == 0.0) return {0.0, 0.0};
    const double r = (gmax - gmin) / (gmax + gmin);
    // eta solves 2 eta / (1 + eta^2) = r on [0, 1]
    const double eta = r / (1.0 + std::sqrt(std::max(0.0, 1.0 - r * r)));
    const double k2 = eta > 0.0 ? (gmax - gmin) / (4.0 * eta) : gmax;
    return {std::sqrt(k2), eta};
}

HermitianParams identify_bin_from_unpolarized_noise(const DensityBin& gyy, double sigma0sq) {
    if (sigma0sq <= 0.0)
        throw std::invalid_argument("identify_from_unpolarized_noise: sigma0sq must be > 0");
    if (gyy.phi > 1.0)
        throw std::invalid_argument("identify_from_unpolarized_noise: Phi > 1");
    HermitianParams p;
    if (gyy.mu && gyy.phi >= kPolarizationEps) {
        p.eta = gyy.phi / (1.0 + std::sqrt(std::max(0.0, 1.0 - gyy.phi * gyy.phi)));
        p.axis = gyy.mu;
    }
    p.gain = std::sqrt(gyy.s0 / (sigma0sq * (1.0 + p.eta * p.eta)));
    return p;
}

HermitianFilterParams identify_from_unpolarized_noise(const PolarizationDensity& gyy,
                                                      double sigma0sq) {
    HermitianFilterParams out;
    out.bins.reserve(gyy.size());
    for (size_t k = 0; k < gyy.size(); ++k)
        out.bins.push_back(identify_bin_from_unpolarized_noise(gyy.bin(k), sigma0sq));
    return out;
}

namespace {

// Left/right coefficient quaternions of the generic matrix action.
struct MatrixCoeffs {
    Quaternion left;   // 1/2 (a - b i + i c - i d i)
    Quaternion right;  // 1/2 (a + b i + i c + i d i)
};

MatrixCoeffs matrix_coeffs(const Mat2& m) {
    const Quaternion i = Quaternion::unit_i();
    const Quaternion a = quat_from_cj(m.a), b = quat_from_cj(m.b);
    const Quaternion c = quat_from_cj(m.c), d = quat_from_cj(m.d);
    MatrixCoeffs out;
    out.left = 0.5 * (a - b * i + i * c - i * d * i);
    out.right = 0.5 * (a + b * i + i * c + i * d * i);
    return out;
}

}  // namespace

Quaternion matrix_apply_bin(const Quaternion& x, const Mat2& m) {
    const MatrixCoeffs co = matrix_coeffs(m);
    const Quaternion j = Quaternion::unit_j();
    return co.left * x - co.right * (j * x * j);
}

QSpectrum matrix_apply(const QSpectrum& X, const MatrixFilter& m) {
    if (m.bins.size() != X.size())
        throw std::invalid_argument("matrix_apply: grid mismatch");
    QSpectrum Y;
    Y.dt = X.dt;
    Y.bins.resize(X.size());
    for (size_t k = 0; k < X.size(); ++k)
        Y.bins[k] = matrix_apply_bin(X.bins[k], m.bins[k]);
    return Y;
}

Quaternion matrix_apply_bin_pairwise(const Quaternion& x, const Mat2& m) {
    const ComplexPair p = ComplexPair::from_quat(x);
    return ComplexPair{m.a * p.c1 + m.b * p.c2, m.c * p.c1 + m.d * p.c2}.quat();
}

QSpectrum matrix_apply_pairwise(const QSpectrum& X, const MatrixFilter& m) {
    if (m.bins.size() != X.size())
        throw std::invalid_argument("matrix_apply_pairwise: grid mismatch");
    QSpectrum Y;
    Y.dt = X.dt;
    Y.bins.resize(X.size());
    for (size_t k = 0; k < X.size(); ++k)
        Y.bins[k] = matrix_apply_bin_pairwise(X.bins[k], m.bins[k]);
    return Y;
}

namespace {

struct Eigen2 {
    double lo = 0.0, hi = 0.0;       // eigenvalues, hi >= lo
    cplx v_hi[2] = {{1, 0}, {0, 0}};  // unit eigenvector of hi
    cplx v_lo[2] = {{0, 0}, {1, 0}};  // unit eigenvector of lo
};

// Eigendecomposition of a Hermitian 2x2 [[p, r], [conj(r), s]].
Eigen2 hermitian_eigen(double p, double s, const cplx& r) {
    Eigen2 e;
    const double half_tr = 0.5 * (p + s);
    const double g = std::sqrt(0.25 * (p - s) * (p - s) + std::norm(r));
    e.hi = half_tr + g;
    e.lo = half_tr - g;
    if (g <= 1e-15 * std::max(std::abs(half_tr), 1e-300)) return e;  // isotropic
    // (A - lo I) v = 0 rows span the hi eigenspace
    cplx u0 = r;
    cplx u1 = {e.hi - p, 0.0};
    double n = std::sqrt(std::norm(u0) + std::norm(u1));
    if (n <= 1e-15 * g) {  // r ~ 0 and hi = p: axis-aligned
        u0 = {1.0, 0.0};
        u1 = {0.0, 0.0};
        n = 1.0;
    }
    e.v_hi[0] = u0 / n;
    e.v_hi[1] = u1 / n;
    e.v_lo[0] = -std::conj(e.v_hi[1]);
    e.v_lo[1] = std::conj(e.v_hi[0]);
    return e;
}

UnitaryParams unitary_params_from_matrix(const Mat2& u) {
    // phase from det U = exp(2 j phase), taken in (-pi/2, pi/2]
    const cplx det = u.det();
    double phase = 0.5 * std::arg(det);
    cplx ph = std::polar(1.0, -phase);
    Mat2 su = u * ph;
    // special-unitary part as the quaternion q = a - b i
    Quaternion q{su.a.real(), -su.b.real(), su.a.imag(), su.b.imag()};
    UnitaryParams out;
    out.phase = phase;
    const double vn = q.vector().norm();
    if (vn < 1e-12) {
        if (q.w < 0.0) {
            // q = -1: fold the sign into the phase so the axis stays undefined
            out.phase = phase > 0.0 ? phase - std::numbers::pi
                                    : phase + std::numbers::pi;
            out.angle = 0.0;
        } else {
            out.angle = 0.0;
        }
        out.axis = PureUnit::unit_i();
        return out;
    }
    out.axis = PureUnit(q.x, q.y, q.z);
    out.angle = 2.0 * std::atan2(vn, q.w);
    return out;
}

}  // namespace

PolarDecomposition polar_decompose(const Mat2& m) {
    PolarDecomposition out;
    const Mat2 mm = m.adjoint() * m;  // Hermitian PSD, H^2
    const Eigen2 e = hermitian_eigen(mm.a.real(), mm.d.real(), mm.b);
    const double s_hi = std::sqrt(std::max(e.hi, 0.0));  // singular values of M
    // small singular value via |det M| / s_hi: the eigenvalue route loses
    // half the digits through the square root near rank deficiency
    const double s_lo = s_hi > 0.0 ? std::abs(m.det()) / s_hi
                                   : std::sqrt(std::max(e.lo, 0.0));

    out.hermitian.gain = 0.5 * (s_hi + s_lo);
    out.hermitian.eta =
        out.hermitian.gain > 0.0 ? (s_hi - s_lo) / (s_hi + s_lo) : 0.0;

    if (s_hi <= 0.0) {
        // M = 0: identity unitary part by convention
        out.hermitian.gain = 0.0;
        out.hermitian.eta = 0.0;
        return out;
    }

    // H = V diag(s) V^*
    Mat2 h;
    h.a = s_hi * e.v_hi[0] * std::conj(e.v_hi[0]) + s_lo * e.v_lo[0] * std::conj(e.v_lo[0]);
    h.b = s_hi * e.v_hi[0] * std::conj(e.v_hi[1]) + s_lo * e.v_lo[0] * std::conj(e.v_lo[1]);
    h.c = std::conj(h.b);
    h.d = s_hi * e.v_hi[1] * std::conj(e.v_hi[1]) + s_lo * e.v_lo[1] * std::conj(e.v_lo[1]);

    // Hermitian axis from the off-diagonal structure; absent when eta ~ 0
    const double hd = 0.5 * (h.a.real() - h.d.real());
    const Quaternion axis_vec{0.0, h.b.imag(), hd, h.b.real()};
    if (axis_vec.norm() > std::max(1e-12, 1e-13 * s_hi) && out.hermitian.eta > 0.0)
        out.hermitian.axis = PureUnit(axis_vec.x, axis_vec.y, axis_vec.z);
    else
        out.hermitian.eta = 0.0;

    // U = M H^{-1} on the range; orthonormal completion on the null space
    Mat2 u;
    const cplx mv_hi[2] = {m.a * e.v_hi[0] + m.b * e.v_hi[1],
                           m.c * e.v_hi[0] + m.d * e.v_hi[1]};
    const cplx u_hi[2] = {mv_hi[0] / s_hi, mv_hi[1] / s_hi};
    cplx u_lo[2];
    if (s_lo > 1e-13 * s_hi) {
        const cplx mv_lo[2] = {m.a * e.v_lo[0] + m.b * e.v_lo[1],
                               m.c * e.v_lo[0] + m.d * e.v_lo[1]};
        u_lo[0] = mv_lo[0] / s_lo;
        u_lo[1] = mv_lo[1] / s_lo;
    } else {
        u_lo[0] = -std::conj(u_hi[1]);
        u_lo[1] = std::conj(u_hi[0]);
    }
    // U = u_hi v_hi^* + u_lo v_lo^*
    u.a = u_hi[0] * std::conj(e.v_hi[0]) + u_lo[0] * std::conj(e.v_lo[0]);
    u.b = u_hi[0] * std::conj(e.v_hi[1]) + u_lo[0] * std::conj(e.v_lo[1]);
    u.c = u_hi[1] * std::conj(e.v_hi[0]) + u_lo[1] * std::conj(e.v_lo[0]);
    u.d = u_hi[1] * std::conj(e.v_hi[1]) + u_lo[1] * std::conj(e.v_lo[1]);

    out.unitary = unitary_params_from_matrix(u);
    return out;
}

Mat2 params_to_matrix(const UnitaryParams& p) {
    const Quaternion q = exp_pure(p.axis, 0.5 * p.angle);
    // SU(2) block [[a, b], [-conj(b), conj(a)]] with q = a - b i
    const cplx a{q.w, q.y};
    const cplx b{-q.x, q.z};
    Mat2 u{a, b, -std::conj(b), std::conj(a)};
    return u * std::polar(1.0, p.phase);
}

Mat2 params_to_matrix(const HermitianParams& p) {
    if (p.eta != 0.0 && !p.axis)
        throw std::invalid_argument("params_to_matrix: eta > 0 requires an axis");
    const double k = p.gain;
    double mx = 0.0, my = 0.0, mz = 0.0;
    if (p.axis) {
        mx = p.axis->x;
        my = p.axis->y;
        mz = p.axis->z;
    }
    const double ke = k * p.eta;
    Mat2 h;
    h.a = {k + ke * my, 0.0};
    h.d = {k - ke * my, 0.0};
    h.b = {ke * mz, ke * mx};
    h.c = std::conj(h.b);
    return h;
}

Mat2 coherency_matrix(const DensityBin& d) {
    HermitianParams p;
    p.gain = 0.5 * d.s0;
    p.eta = d.mu ? d.phi : 0.0;
    p.axis = d.mu;
    return params_to_matrix(p);
}

DensityBin density_from_coherency(const Mat2& p) {
    const double s0 = p.a.real() + p.d.real();
    const Quaternion v{0.0, 2.0 * p.b.imag(), p.a.real() - p.d.real(), 2.0 * p.b.real()};
    return decompose_density({s0, v.x, v.y, v.z});
}

}  // namespace bivar
