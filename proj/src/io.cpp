#include "bivar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bivar::io {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot open for writing: " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open: " + path);
    return f;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double parse_num(const std::string& s, const std::string& path, size_t lineno) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
        if (used != s.size()) throw std::invalid_argument("trailing junk");
        if (!std::isfinite(v)) throw std::invalid_argument("not finite");
        return v;
    } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
    }
}

struct CsvReader {
    std::ifstream file;
    std::string path;
    size_t lineno = 0;
    std::vector<std::string> header;

    CsvReader(const std::string& p, const std::string& want_header) : path(p) {
        file = open_in(p);
        std::string line;
        if (!std::getline(file, line))
            throw ParseError(p + ": empty file");
        ++lineno;
        header = split_csv(line);
        if (!want_header.empty()) {
            const auto want = split_csv(want_header);
            if (header != want)
                throw ParseError(p + ":1: expected header '" + want_header + "'");
        }
    }

    bool next(std::vector<double>& row) {
        std::string line;
        while (std::getline(file, line)) {
            ++lineno;
            if (line.empty()) continue;
            const auto cells = split_csv(line);
            if (cells.size() != header.size())
                throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": expected " + std::to_string(header.size()) + " columns");
            row.clear();
            for (const auto& c : cells) row.push_back(parse_num(c, path, lineno));
            return true;
        }
        return false;
    }
};

}  // namespace

void write_signal_csv(const std::string& path, const BivariateSignal& x) {
    std::ofstream f = open_out(path);
    f << "t,x1,x2\n";
    for (size_t n = 0; n < x.size(); ++n)
        f << fmt(static_cast<double>(n) * x.dt) << ',' << fmt(x.x1[n]) << ','
          << fmt(x.x2[n]) << '\n';
}

BivariateSignal read_signal_csv(const std::string& path) {
    CsvReader r(path, "t,x1,x2");
    BivariateSignal x;
    std::vector<double> row;
    std::vector<double> t;
    while (r.next(row)) {
        t.push_back(row[0]);
        x.x1.push_back(row[1]);
        x.x2.push_back(row[2]);
    }
    if (x.x1.empty()) throw ParseError(path + ": no samples");
    if (t.size() >= 2) {
        x.dt = t[1] - t[0];
        if (x.dt <= 0.0) throw ParseError(path + ": nonincreasing time column");
    }
    return x;
}

void write_stacked_signal_csv(const std::string& path,
                              const std::vector<BivariateSignal>& xs) {
    std::ofstream f = open_out(path);
    f << "realization,t,x1,x2\n";
    for (size_t r = 0; r < xs.size(); ++r)
        for (size_t n = 0; n < xs[r].size(); ++n)
            f << r << ',' << fmt(static_cast<double>(n) * xs[r].dt) << ','
              << fmt(xs[r].x1[n]) << ',' << fmt(xs[r].x2[n]) << '\n';
}

std::vector<BivariateSignal> read_stacked_signal_csv(const std::string& path) {
    CsvReader r(path, "realization,t,x1,x2");
    std::vector<BivariateSignal> out;
    std::vector<double> row;
    std::vector<double> first_t;
    long current = -1;
    while (r.next(row)) {
        const long idx = static_cast<long>(row[0]);
        if (idx != current) {
            if (idx != current + 1)
                throw ParseError(path + ":" + std::to_string(r.lineno) +
                                 ": realizations out of order");
            current = idx;
            out.emplace_back();
        }
        if (current == 0) first_t.push_back(row[1]);
        out.back().x1.push_back(row[2]);
        out.back().x2.push_back(row[3]);
    }
    if (out.empty()) throw ParseError(path + ": no samples");
    double dt = 1.0;
    if (first_t.size() >= 2) {
        dt = first_t[1] - first_t[0];
        if (dt <= 0.0) throw ParseError(path + ": nonincreasing time column");
    }
    for (auto& x : out) {
        if (x.size() != out.front().size())
            throw ParseError(path + ": realization length mismatch");
        x.dt = dt;
    }
    return out;
}

std::vector<BivariateSignal> read_signals_csv(const std::string& path) {
    std::ifstream probe = open_in(path);
    std::string header;
    std::getline(probe, header);
    probe.close();
    if (header == "realization,t,x1,x2") return read_stacked_signal_csv(path);
    return {read_signal_csv(path)};
}

void write_density_csv(const std::string& path, const PolarizationDensity& half,
                       double dt, size_t n) {
    std::ofstream f = open_out(path);
    f << "nu,S0,Phi,s1,s2,s3\n";
    for (size_t k = 0; k < half.size(); ++k) {
        const double nu = static_cast<double>(k) / (static_cast<double>(n) * dt);
        double s1 = 0.0, s2 = 0.0, s3 = 0.0;
        if (half.mu[k]) {
            s1 = half.phi[k] * half.mu[k]->y;
            s2 = half.phi[k] * half.mu[k]->z;
            s3 = half.phi[k] * half.mu[k]->x;
        }
        f << fmt(nu) << ',' << fmt(half.s0[k]) << ',' << fmt(half.phi[k]) << ','
          << fmt(s1) << ',' << fmt(s2) << ',' << fmt(s3) << '\n';
    }
}

DensityFile read_density_csv(const std::string& path) {
    CsvReader r(path, "nu,S0,Phi,s1,s2,s3");
    DensityFile out;
    std::vector<double> row;
    while (r.next(row)) {
        out.nu.push_back(row[0]);
        DensityBin b;
        b.s0 = row[1];
        b.phi = row[2];
        if (b.s0 < 0.0)
            throw ParseError(path + ":" + std::to_string(r.lineno) + ": S0 < 0");
        if (b.phi < 0.0 || b.phi > 1.0)
            throw ParseError(path + ":" + std::to_string(r.lineno) + ": Phi outside [0, 1]");
        const double norm = std::sqrt(row[3] * row[3] + row[4] * row[4] + row[5] * row[5]);
        if (norm > 1e-12 && b.phi >= kPolarizationEps)
            b.mu = PureUnit(row[5], row[3], row[4]);  // (s3, s1, s2) -> (i, j, k)
        else
            b.phi = 0.0;
        out.half.push_back(b);
    }
    if (out.half.size() == 0) throw ParseError(path + ": no bins");
    return out;
}

void write_poincare_csv(const std::string& path, const PolarizationDensity& half,
                        double dt, size_t n) {
    std::ofstream f = open_out(path);
    f << "nu,Phi,two_theta,two_chi\n";
    for (size_t k = 0; k < half.size(); ++k) {
        const double nu = static_cast<double>(k) / (static_cast<double>(n) * dt);
        double two_theta = 0.0, two_chi = 0.0;
        if (half.mu[k]) {
            two_theta = std::atan2(half.mu[k]->z, half.mu[k]->y);
            two_chi = std::asin(std::clamp(half.mu[k]->x, -1.0, 1.0));
        }
        f << fmt(nu) << ',' << fmt(half.phi[k]) << ',' << fmt(two_theta) << ','
          << fmt(two_chi) << '\n';
    }
}

void write_unitary_csv(const std::string& path, const UnitaryFilterParams& p,
                       double dt, size_t n) {
    std::ofstream f = open_out(path);
    f << "nu,mu1,mu2,mu3,alpha,phi\n";
    for (size_t k = 0; k < p.bins.size(); ++k) {
        const double nu = static_cast<double>(k) / (static_cast<double>(n) * dt);
        const UnitaryParams& b = p.bins[k];
        f << fmt(nu) << ',' << fmt(b.axis.x) << ',' << fmt(b.axis.y) << ','
          << fmt(b.axis.z) << ',' << fmt(b.angle) << ',' << fmt(b.phase) << '\n';
    }
}

void write_hermitian_csv(const std::string& path, const HermitianFilterParams& p,
                         double dt, size_t n) {
    std::ofstream f = open_out(path);
    f << "nu,K,eta,mu1,mu2,mu3\n";
    for (size_t k = 0; k < p.bins.size(); ++k) {
        const double nu = static_cast<double>(k) / (static_cast<double>(n) * dt);
        const HermitianParams& b = p.bins[k];
        const double mx = b.axis ? b.axis->x : 0.0;
        const double my = b.axis ? b.axis->y : 0.0;
        const double mz = b.axis ? b.axis->z : 0.0;
        f << fmt(nu) << ',' << fmt(b.gain) << ',' << fmt(b.eta) << ',' << fmt(mx)
          << ',' << fmt(my) << ',' << fmt(mz) << '\n';
    }
}

FilterFile read_filter_csv(const std::string& path) {
    CsvReader r(path, "");
    FilterFile out;
    const std::vector<std::string> unitary_hdr = {"nu", "mu1", "mu2", "mu3", "alpha", "phi"};
    const std::vector<std::string> hermitian_hdr = {"nu", "K", "eta", "mu1", "mu2", "mu3"};
    if (r.header == unitary_hdr)
        out.is_unitary = true;
    else if (r.header == hermitian_hdr)
        out.is_unitary = false;
    else
        throw ParseError(path + ":1: unrecognized filter header");

    std::vector<double> row;
    while (r.next(row)) {
        if (out.is_unitary) {
            UnitaryParams b;
            b.axis = PureUnit(row[1], row[2], row[3]);
            b.angle = row[4];
            b.phase = row[5];
            out.unitary.bins.push_back(b);
        } else {
            HermitianParams b;
            b.gain = row[1];
            b.eta = row[2];
            if (b.gain < 0.0)
                throw ParseError(path + ":" + std::to_string(r.lineno) + ": K < 0");
            if (b.eta < 0.0 || b.eta > 1.0)
                throw ParseError(path + ":" + std::to_string(r.lineno) + ": eta outside [0, 1]");
            const double norm = std::sqrt(row[3] * row[3] + row[4] * row[4] + row[5] * row[5]);
            if (norm > 1e-12)
                b.axis = PureUnit(row[3], row[4], row[5]);
            else if (b.eta > 0.0)
                throw ParseError(path + ":" + std::to_string(r.lineno) +
                                 ": eta > 0 requires an axis");
            out.hermitian.bins.push_back(b);
        }
    }
    const size_t count = out.is_unitary ? out.unitary.bins.size() : out.hermitian.bins.size();
    if (count == 0) throw ParseError(path + ": no bins");
    return out;
}

}  // namespace bivar::io
