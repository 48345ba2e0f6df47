#pragma once

#include <string>
#include <vector>

#include "bivar/filters.hpp"
#include "bivar/signal.hpp"
#include "bivar/spectral.hpp"

namespace bivar::io {

// Parse failures carry the offending file and line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Signal CSV, header "t,x1,x2", one row per sample; values are written with
 *  17 significant digits so round trips are exact to double precision. */
void write_signal_csv(const std::string& path, const BivariateSignal& x);
BivariateSignal read_signal_csv(const std::string& path);

/** Stacked batch of realizations in one CSV, header "realization,t,x1,x2". */
void write_stacked_signal_csv(const std::string& path,
                              const std::vector<BivariateSignal>& xs);
std::vector<BivariateSignal> read_stacked_signal_csv(const std::string& path);

// Reads either a plain signal CSV (one realization) or a stacked file,
// keyed on the header.
std::vector<BivariateSignal> read_signals_csv(const std::string& path);

/**
 * Density CSV on the nonnegative-frequency half grid, header
 * "nu,S0,Phi,s1,s2,s3" where (s1,s2,s3) are the normalized Stokes components
 * of Phi mu (the Cartesian Poincare-sphere coordinates).
 */
void write_density_csv(const std::string& path, const PolarizationDensity& half,
                       double dt, size_t n);
struct DensityFile {
    PolarizationDensity half;
    std::vector<double> nu;
};
DensityFile read_density_csv(const std::string& path);

/** Poincare coordinates CSV, header "nu,Phi,two_theta,two_chi": radius Phi
 *  and the spherical angles of the polarization axis. */
void write_poincare_csv(const std::string& path, const PolarizationDensity& half,
                        double dt, size_t n);

/** Filter CSV on the half grid: either "nu,mu1,mu2,mu3,alpha,phi" (unitary)
 *  or "nu,K,eta,mu1,mu2,mu3" (Hermitian); axis components on (i, j, k). */
void write_unitary_csv(const std::string& path, const UnitaryFilterParams& p,
                       double dt, size_t n);
void write_hermitian_csv(const std::string& path, const HermitianFilterParams& p,
                         double dt, size_t n);

struct FilterFile {
    bool is_unitary = false;
    UnitaryFilterParams unitary;
    HermitianFilterParams hermitian;
};
FilterFile read_filter_csv(const std::string& path);

}  // namespace bivar::io
