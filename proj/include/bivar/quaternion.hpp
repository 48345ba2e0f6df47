#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace bivar {

/**
 * Quaternion value on the basis {1, i, j, k} with Hamilton products
 * (ij = k, jk = i, ki = j). All spectral quantities in this library are
 * built from these values; components are 64-bit doubles.
 */
struct Quaternion {
    double w = 0.0;  // scalar part
    double x = 0.0;  // i component
    double y = 0.0;  // j component
    double z = 0.0;  // k component

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_)
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr double scalar() const { return w; }
    constexpr Quaternion vector() const { return {0.0, x, y, z}; }

    constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }

    constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

// Hamilton product; noncommutative.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

enum class Axis { I, J, K };

// Involution with respect to one imaginary axis: the reflection -u q u for
// unit axis u. Equivalently, negate the two orthogonal imaginary components.
constexpr Quaternion involution(const Quaternion& q, Axis axis) {
    switch (axis) {
        case Axis::I: return {q.w, q.x, -q.y, -q.z};
        case Axis::J: return {q.w, -q.x, q.y, -q.z};
        default:      return {q.w, -q.x, -q.y, q.z};
    }
}

/**
 * Pure unit quaternion: a unit vector of span{i, j, k}, squaring to -1.
 * Used for polarization, birefringence and diattenuation axes. Construction
 * normalizes and rejects near-zero input, so a value always has unit norm.
 */
struct PureUnit {
    double x = 0.0;  // i component
    double y = 1.0;  // j component
    double z = 0.0;  // k component

    PureUnit() = default;
    PureUnit(double xi, double yj, double zk) {
        const double n = std::sqrt(xi * xi + yj * yj + zk * zk);
        if (n < 1e-12)
            throw std::invalid_argument("PureUnit: degenerate axis (norm < 1e-12)");
        x = xi / n;
        y = yj / n;
        z = zk / n;
    }

    static PureUnit unit_i() { return make_unchecked(1.0, 0.0, 0.0); }
    static PureUnit unit_j() { return make_unchecked(0.0, 1.0, 0.0); }
    static PureUnit unit_k() { return make_unchecked(0.0, 0.0, 1.0); }

    // For components already known to be unit-norm (e.g. mirrored axes).
    static PureUnit make_unchecked(double xi, double yj, double zk) {
        PureUnit u;
        u.x = xi;
        u.y = yj;
        u.z = zk;
        return u;
    }

    Quaternion quat() const { return {0.0, x, y, z}; }
    PureUnit operator-() const { return make_unchecked(-x, -y, -z); }
};

inline PureUnit involution(const PureUnit& u, Axis axis) {
    const Quaternion q = involution(u.quat(), axis);
    return PureUnit::make_unchecked(q.x, q.y, q.z);
}

// Usual R^3 inner product of two axes, S(u vbar); in [-1, 1].
inline double inner3(const PureUnit& u, const PureUnit& v) {
    return u.x * v.x + u.y * v.y + u.z * v.z;
}

// exp(u theta) = cos(theta) + u sin(theta); unit modulus.
inline Quaternion exp_pure(const PureUnit& axis, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, axis.x * s, axis.y * s, axis.z * s};
}

/**
 * Pair of complex numbers over the j-subfield representing a quaternion as
 * q = c1 + i c2 with c1 = w + y j and c2 = x + z j. This is the vector
 * representation used by the 2x2 matrix bridge.
 */
struct ComplexPair {
    std::complex<double> c1;
    std::complex<double> c2;

    static ComplexPair from_quat(const Quaternion& q) {
        return {{q.w, q.y}, {q.x, q.z}};
    }
    Quaternion quat() const {
        return {c1.real(), c2.real(), c1.imag(), c2.imag()};
    }
};

// Lift a C_j complex scalar to a quaternion (w + y j).
inline Quaternion quat_from_cj(const std::complex<double>& c) {
    return {c.real(), 0.0, c.imag(), 0.0};
}

/**
 * Unit rotor u with u j conj(u) = mu, i.e. the half-angle rotation taking the
 * j axis to mu. Right-multiplying u by any C_j value yields a fully polarized
 * spectral component with polarization axis mu.
 */
inline Quaternion rotor_from_j(const PureUnit& mu) {
    const double c = mu.y;  // <j, mu>
    if (c > 1.0 - 1e-15) return {1.0, 0.0, 0.0, 0.0};
    if (c < -1.0 + 1e-15) return Quaternion::unit_i();  // half turn about i
    // rotation axis j x mu, angle acos<j, mu>
    const PureUnit axis(mu.z, 0.0, -mu.x);
    return exp_pure(axis, 0.5 * std::acos(c));
}

}  // namespace bivar
