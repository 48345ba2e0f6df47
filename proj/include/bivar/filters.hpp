#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bivar/spectral.hpp"

namespace bivar {

/** 2x2 matrix of C_j complex scalars; the vector-representation view of a
 *  per-frequency linear transform. */
struct Mat2 {
    std::complex<double> a, b, c, d;  // row-major [[a, b], [c, d]]

    static Mat2 identity() { return {{1, 0}, {0, 0}, {0, 0}, {1, 0}}; }
    static Mat2 zero() { return {{0, 0}, {0, 0}, {0, 0}, {0, 0}}; }

    Mat2 adjoint() const {
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }
    std::complex<double> det() const { return a * d - b * c; }
    double fro_norm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
};

Mat2 operator*(const Mat2& m, const Mat2& n);
Mat2 operator*(const Mat2& m, const std::complex<double>& s);
Mat2 operator+(const Mat2& m, const Mat2& n);
Mat2 operator-(const Mat2& m, const Mat2& n);

/** Unitary (birefringence) parameters of one nonnegative-frequency bin:
 *  Y = exp(axis * angle / 2) X exp(j phase). */
struct UnitaryParams {
    PureUnit axis = PureUnit::unit_i();
    double angle = 0.0;  // birefringence angle, [0, 2 pi]
    double phase = 0.0;  // overall phase
};

/** Hermitian (diattenuation) parameters of one nonnegative-frequency bin:
 *  Y = gain [X - eta * axis X j]. Axis may be absent only when eta = 0. */
struct HermitianParams {
    double gain = 1.0;  // homogeneous gain K >= 0
    double eta = 0.0;   // polarizing power, [0, 1]
    std::optional<PureUnit> axis;
};

/** Filter description on the nonnegative-frequency half grid (DC..Nyquist);
 *  the negative-frequency extension is performed by the apply operations. */
struct UnitaryFilterParams {
    std::vector<UnitaryParams> bins;
};
struct HermitianFilterParams {
    std::vector<HermitianParams> bins;
};
struct MatrixFilter {
    std::vector<Mat2> bins;  // full grid, same length as the spectrum
};

// Mirror parameters onto a negative-frequency bin: axis -> involution_i(axis),
// angle/gain/eta even, phase odd.
UnitaryParams mirror(const UnitaryParams& p);
HermitianParams mirror(const HermitianParams& p);

// Single-bin filter actions.
Quaternion apply_unitary_bin(const Quaternion& x, const UnitaryParams& p);
Quaternion apply_hermitian_bin(const Quaternion& x, const HermitianParams& p);

/** Apply a unitary filter given on the half grid to a full-grid spectrum;
 *  negative-frequency parameters follow the symmetry extension. */
QSpectrum apply_unitary(const QSpectrum& X, const UnitaryFilterParams& p);

/** Apply a Hermitian filter given on the half grid to a full-grid spectrum. */
QSpectrum apply_hermitian(const QSpectrum& X, const HermitianFilterParams& p);

// Density maps: total PSD and degree of polarization are invariant under the
// unitary map (the axis rotates); the Hermitian map follows the closed forms
// of the filtered density.
DensityBin unitary_density_bin(const DensityBin& d, const UnitaryParams& p);
DensityBin hermitian_density_bin(const DensityBin& d, const HermitianParams& p);
PolarizationDensity unitary_density_map(const PolarizationDensity& d,
                                        const UnitaryFilterParams& p);
PolarizationDensity hermitian_density_map(const PolarizationDensity& d,
                                          const HermitianFilterParams& p);

// Power gain G = K^2 [1 + eta^2 + 2 eta Phi <mu, mu_x>] = S0_out / S0_in.
double gain_bin(const DensityBin& d, const HermitianParams& p);
// Per-bin gains; bins with S0 = 0 are undefined and left empty.
std::vector<std::optional<double>> gain(const PolarizationDensity& d,
                                        const HermitianFilterParams& p);

/** Recover (K, eta) from the extreme gains over input polarizations:
 *  Gmax = K^2 (1+eta)^2, Gmin = K^2 (1-eta)^2. */
struct GainIdentification {
    double gain = 0.0;
    double eta = 0.0;
};
GainIdentification identify_from_gain_extrema(double gmax, double gmin);

/** Recover Hermitian filter parameters from the output density of an
 *  unpolarized white-noise probe of variance sigma0sq. */
HermitianFilterParams identify_from_unpolarized_noise(const PolarizationDensity& gyy,
                                                      double sigma0sq);
HermitianParams identify_bin_from_unpolarized_noise(const DensityBin& gyy, double sigma0sq);

// Quaternion-domain action of a generic 2x2 complex matrix:
// Y = 1/2 (a - b i + i c - i d i) X - 1/2 (a + b i + i c + i d i) j X j.
Quaternion matrix_apply_bin(const Quaternion& x, const Mat2& m);
QSpectrum matrix_apply(const QSpectrum& X, const MatrixFilter& m);

// Componentwise matrix-vector product on the complex-pair representation;
// the independent oracle for the quaternion path.
Quaternion matrix_apply_bin_pairwise(const Quaternion& x, const Mat2& m);
QSpectrum matrix_apply_pairwise(const QSpectrum& X, const MatrixFilter& m);

/** Polar decomposition M = U H of one bin with the parameter extraction:
 *  unitary (axis, angle, phase) and Hermitian (K, eta, axis). M = 0 yields
 *  K = 0 with an identity unitary part. */
struct PolarDecomposition {
    UnitaryParams unitary;
    HermitianParams hermitian;
};
PolarDecomposition polar_decompose(const Mat2& m);

// Inverse parameter maps.
Mat2 params_to_matrix(const UnitaryParams& p);
Mat2 params_to_matrix(const HermitianParams& p);

// Spectral density matrix of a density bin (the coherency matrix
// [[S0+S1, S2-jS3],[S2+jS3, S0-S1]]/2) and its inverse map; the matrix-side
// view used by density-map and Wiener oracles.
Mat2 coherency_matrix(const DensityBin& d);
DensityBin density_from_coherency(const Mat2& p);

}  // namespace bivar
