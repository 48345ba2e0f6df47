// Command-line front end: spectral synthesis, density estimation, LTI
// filtering, Wiener denoising and two-component decompositions of bivariate
// signals, wired through CSV/JSON files.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bivar/decompose.hpp"
#include "bivar/filters.hpp"
#include "bivar/io.hpp"
#include "bivar/qft.hpp"
#include "bivar/spectral.hpp"
#include "bivar/synthesis.hpp"
#include "bivar/wiener.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr const char* kSchemaVersion = "1";

uint64_t default_seed() {
    if (const char* env = std::getenv("BIVAR_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

std::string numbered_path(const std::string& pattern, size_t index) {
    const auto pos = pattern.rfind('.');
    char buf[16];
    std::snprintf(buf, sizeof(buf), "_%04zu", index);
    if (pos == std::string::npos) return pattern + buf;
    return pattern.substr(0, pos) + buf + pattern.substr(pos);
}

void write_report(const std::string& path, json j) {
    j["schema_version"] = kSchemaVersion;
    std::ofstream f(path);
    if (!f) throw bivar::io::ParseError("cannot open for writing: " + path);
    f << j.dump(2) << '\n';
}

double signal_power(const bivar::BivariateSignal& x) {
    return x.energy() / static_cast<double>(x.size());
}

double snr_db(const bivar::BivariateSignal& clean, const bivar::BivariateSignal& other) {
    double sig = 0.0, err = 0.0;
    for (size_t n = 0; n < clean.size(); ++n) {
        const double e1 = other.x1[n] - clean.x1[n];
        const double e2 = other.x2[n] - clean.x2[n];
        sig += clean.x1[n] * clean.x1[n] + clean.x2[n] * clean.x2[n];
        err += e1 * e1 + e2 * e2;
    }
    return 10.0 * std::log10(sig / err);
}

// Half-grid density file sized for an N-point signal, extended to the grid.
bivar::PolarizationDensity load_density_for(const std::string& path, size_t n) {
    const bivar::io::DensityFile df = bivar::io::read_density_csv(path);
    if (df.half.size() != bivar::half_grid_size(n))
        throw bivar::io::ParseError(path + ": expected " +
                                    std::to_string(bivar::half_grid_size(n)) +
                                    " bins for a length-" + std::to_string(n) + " signal");
    return bivar::extend_to_full_grid(df.half, n);
}

struct SynthArgs {
    std::string target_path, out_path;
    size_t n = 1024;
    size_t oversample = 10;
    size_t count = 1;
    uint64_t seed = default_seed();
    bool stack = false;
};

int cmd_synth(const SynthArgs& a) {
    const bivar::io::DensityFile df = bivar::io::read_density_csv(a.target_path);
    bivar::SynthesisTarget target;
    target.half = df.half;
    if (df.nu.size() >= 2) {
        const double dnu = df.nu[1] - df.nu[0];
        target.dt = 1.0 / (dnu * static_cast<double>(a.n));
    }
    std::vector<bivar::BivariateSignal> xs;
    xs.reserve(a.count);
    for (size_t r = 0; r < a.count; ++r)
        xs.push_back(bivar::spectral_synthesis(target, a.n, a.oversample,
                                               a.seed + static_cast<uint64_t>(r)));
    if (a.count == 1) {
        bivar::io::write_signal_csv(a.out_path, xs.front());
    } else if (a.stack) {
        bivar::io::write_stacked_signal_csv(a.out_path, xs);
    } else {
        for (size_t r = 0; r < xs.size(); ++r)
            bivar::io::write_signal_csv(numbered_path(a.out_path, r), xs[r]);
    }
    return 0;
}

struct AnalyzeArgs {
    std::vector<std::string> inputs;
    std::string density_path, poincare_path;
};

int cmd_analyze(const AnalyzeArgs& a) {
    std::vector<bivar::BivariateSignal> xs;
    for (const std::string& p : a.inputs) {
        auto batch = bivar::io::read_signals_csv(p);
        xs.insert(xs.end(), batch.begin(), batch.end());
    }
    const bivar::PolarizationDensity full = bivar::estimate_density(xs);
    const bivar::PolarizationDensity half = bivar::restrict_to_half_grid(full);
    const size_t n = xs.front().size();
    const double dt = xs.front().dt;
    bivar::io::write_density_csv(a.density_path, half, dt, n);
    if (!a.poincare_path.empty())
        bivar::io::write_poincare_csv(a.poincare_path, half, dt, n);
    return 0;
}

struct FilterArgs {
    std::string in_path, params_path, out_path, report_path;
};

int cmd_filter(const FilterArgs& a) {
    const bivar::BivariateSignal x = bivar::io::read_signal_csv(a.in_path);
    const bivar::io::FilterFile filt = bivar::io::read_filter_csv(a.params_path);
    const size_t want = bivar::half_grid_size(x.size());
    const size_t got = filt.is_unitary ? filt.unitary.bins.size() : filt.hermitian.bins.size();
    if (got != want)
        throw bivar::io::ParseError(a.params_path + ": expected " + std::to_string(want) +
                                    " bins for a length-" + std::to_string(x.size()) +
                                    " signal");
    const bivar::QSpectrum X = bivar::qft_forward(x);
    const bivar::QSpectrum Y = filt.is_unitary ? bivar::apply_unitary(X, filt.unitary)
                                               : bivar::apply_hermitian(X, filt.hermitian);
    const bivar::InverseResult inv = bivar::qft_inverse(Y);
    if (inv.non_bivariate) {
        std::fprintf(stderr,
                     "bivar filter: output is not a bivariate signal "
                     "(j/k energy fraction %.3g); check the parameter symmetry\n",
                     inv.offplane_fraction);
        return kExitNumerical;
    }
    bivar::io::write_signal_csv(a.out_path, inv.signal);
    if (!a.report_path.empty()) {
        json rep;
        rep["filter_kind"] = filt.is_unitary ? "unitary" : "hermitian";
        rep["bins"] = got;
        rep["power_in"] = signal_power(x);
        rep["power_out"] = signal_power(inv.signal);
        rep["power_gain"] = signal_power(inv.signal) / signal_power(x);
        write_report(a.report_path, rep);
    }
    return 0;
}

struct NoiseArgs {
    std::string in_path, out_path, report_path;
    double snr_db_target = 0.0;
    double phi = 0.0;
    double theta = 0.0;
    uint64_t seed = default_seed();
};

int cmd_noise(const NoiseArgs& a) {
    const bivar::BivariateSignal x = bivar::io::read_signal_csv(a.in_path);
    const double p_signal = signal_power(x);
    const double s0w = p_signal / std::pow(10.0, a.snr_db_target / 10.0);
    const bivar::WhiteNoiseSpec spec =
        a.phi > 0.0 ? bivar::WhiteNoiseSpec::polarized(s0w, a.phi, a.theta)
                    : bivar::WhiteNoiseSpec::channels(std::sqrt(s0w / 2),
                                                      std::sqrt(s0w / 2), 0.0);
    const bivar::BivariateSignal w = bivar::white_noise(spec, x.size(), a.seed, x.dt);
    bivar::BivariateSignal y = x;
    for (size_t n = 0; n < x.size(); ++n) {
        y.x1[n] += w.x1[n];
        y.x2[n] += w.x2[n];
    }
    bivar::io::write_signal_csv(a.out_path, y);
    if (!a.report_path.empty()) {
        json rep;
        rep["noise_power"] = s0w;
        rep["snr_in_db"] = snr_db(x, y);
        rep["phi"] = a.phi;
        rep["theta"] = a.theta;
        write_report(a.report_path, rep);
    }
    return 0;
}

struct WienerArgs {
    std::string in_path, signal_density_path, noise_density_path;
    std::string out_path, report_path, clean_path;
};

int cmd_wiener(const WienerArgs& a) {
    const bivar::BivariateSignal y = bivar::io::read_signal_csv(a.in_path);
    bivar::DenoisingProblem prob;
    prob.gxx = load_density_for(a.signal_density_path, y.size());
    prob.gww = load_density_for(a.noise_density_path, y.size());
    const bivar::DenoiseResult r = bivar::denoise(y, prob);
    bivar::io::write_signal_csv(a.out_path, r.signal);

    if (!a.report_path.empty()) {
        json rep;
        const bivar::MmseResult formula = bivar::mmse(prob, y.dt);
        rep["mmse_formula"] = formula.total;
        rep["regularized_bins"] = r.regularized_bins;
        rep["offplane_fraction"] = r.offplane_fraction;
        if (!a.clean_path.empty()) {
            const bivar::BivariateSignal x = bivar::io::read_signal_csv(a.clean_path);
            if (x.size() != y.size())
                throw bivar::io::ParseError(a.clean_path + ": length mismatch");
            rep["snr_in_db"] = snr_db(x, y);
            rep["snr_rec_db"] = snr_db(x, r.signal);
            double err = 0.0;
            for (size_t n = 0; n < x.size(); ++n) {
                const double e1 = r.signal.x1[n] - x.x1[n];
                const double e2 = r.signal.x2[n] - x.x2[n];
                err += e1 * e1 + e2 * e2;
            }
            rep["mmse_empirical"] = err / static_cast<double>(x.size());
        } else {
            rep["snr_in_db"] = nullptr;
            rep["snr_rec_db"] = nullptr;
            rep["mmse_empirical"] = nullptr;
        }
        write_report(a.report_path, rep);
    }
    return 0;
}

struct DecomposeArgs {
    std::string in_path, density_path, mode;
    std::string out_a, out_b, report_path;
};

int cmd_decompose(const DecomposeArgs& a) {
    const bivar::BivariateSignal x = bivar::io::read_signal_csv(a.in_path);
    const bivar::PolarizationDensity d = load_density_for(a.density_path, x.size());
    bivar::DecompositionMode mode;
    if (a.mode == "i")
        mode = bivar::DecompositionMode::PolarizedPartPower;
    else if (a.mode == "ii")
        mode = bivar::DecompositionMode::UnpolarizedRemainder;
    else
        mode = bivar::DecompositionMode::Uncorrelated;
    const bivar::SignalDecomposition sd = bivar::decompose_signal(x, d, mode);
    bivar::io::write_signal_csv(a.out_a, sd.a);
    bivar::io::write_signal_csv(a.out_b, sd.b);

    if (!a.report_path.empty()) {
        json rep;
        rep["mode"] = a.mode;
        rep["power_a"] = signal_power(sd.a);
        rep["power_b"] = signal_power(sd.b);
        const bivar::UncorrelatedStats stats = bivar::test_uncorrelated({sd.a}, {sd.b});
        const size_t half = bivar::half_grid_size(x.size());
        json plain = json::array(), inserted = json::array(), nu = json::array();
        for (size_t k = 0; k < half; ++k) {
            nu.push_back(static_cast<double>(k) /
                         (static_cast<double>(x.size()) * x.dt));
            plain.push_back(stats.plain[k]);
            inserted.push_back(stats.inserted[k]);
        }
        rep["nu"] = nu;
        rep["cross_plain"] = plain;
        rep["cross_j"] = inserted;
        write_report(a.report_path, rep);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LTI filtering toolbox for bivariate signals (quaternion spectral methods)"};
    app.require_subcommand(1);

    SynthArgs sy;
    CLI::App* synth = app.add_subcommand(
        "synth", "Simulate stationary Gaussian signals with a prescribed spectral density");
    synth->add_option("--target", sy.target_path, "target density CSV (nu,S0,Phi,s1,s2,s3)")
        ->required();
    synth->add_option("--n", sy.n, "output length")->check(CLI::Range(size_t{2}, size_t{1} << 24));
    synth->add_option("--oversample", sy.oversample, "shaping record length factor M/N")
        ->check(CLI::Range(size_t{1}, size_t{1024}));
    synth->add_option("--seed", sy.seed, "RNG seed (default $BIVAR_SEED or 0)");
    synth->add_option("--count", sy.count, "number of realizations")
        ->check(CLI::Range(size_t{1}, size_t{100000}));
    synth->add_flag("--stack", sy.stack, "write one stacked CSV instead of numbered files");
    synth->add_option("--out", sy.out_path, "output signal CSV")->required();

    AnalyzeArgs an;
    CLI::App* analyze =
        app.add_subcommand("analyze", "Estimate the quaternion spectral density");
    analyze->add_option("inputs", an.inputs, "signal CSV files (plain or stacked)")
        ->required()
        ->expected(-1);
    analyze->add_option("--out", an.density_path, "output density CSV")->required();
    analyze->add_option("--poincare", an.poincare_path,
                        "optional Poincare coordinates CSV (nu,Phi,two_theta,two_chi)");

    FilterArgs fi;
    CLI::App* filter = app.add_subcommand("filter", "Apply a unitary or Hermitian filter");
    filter->add_option("--in", fi.in_path, "input signal CSV")->required();
    filter->add_option("--params", fi.params_path, "filter parameter CSV")->required();
    filter->add_option("--out", fi.out_path, "output signal CSV")->required();
    filter->add_option("--report", fi.report_path, "optional JSON report");

    NoiseArgs no;
    CLI::App* noise =
        app.add_subcommand("noise", "Add white noise at a requested SNR in dB");
    noise->add_option("--in", no.in_path, "input signal CSV")->required();
    noise->add_option("--snr-db", no.snr_db_target, "target SNR in dB")->required();
    noise->add_option("--phi", no.phi, "noise degree of polarization in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    noise->add_option("--theta", no.theta, "linear polarization orientation in radians");
    noise->add_option("--seed", no.seed, "RNG seed (default $BIVAR_SEED or 0)");
    noise->add_option("--out", no.out_path, "output signal CSV")->required();
    noise->add_option("--report", no.report_path, "optional JSON report");

    WienerArgs wi;
    CLI::App* wiener = app.add_subcommand("wiener", "Wiener denoising with known densities");
    wiener->add_option("--in", wi.in_path, "noisy signal CSV")->required();
    wiener->add_option("--signal-density", wi.signal_density_path, "signal density CSV")
        ->required();
    wiener->add_option("--noise-density", wi.noise_density_path, "noise density CSV")
        ->required();
    wiener->add_option("--out", wi.out_path, "denoised signal CSV")->required();
    wiener->add_option("--report", wi.report_path, "optional JSON report");
    wiener->add_option("--clean", wi.clean_path,
                       "optional clean reference for SNR and empirical error");

    DecomposeArgs de;
    CLI::App* decompose =
        app.add_subcommand("decompose", "Split a signal into two components");
    decompose->add_option("--in", de.in_path, "input signal CSV")->required();
    decompose->add_option("--density", de.density_path, "density CSV describing the input")
        ->required();
    decompose->add_option("--mode", de.mode, "i (polarized-part power), ii (unpolarized remainder), iii (uncorrelated)")
        ->required()
        ->check(CLI::IsMember({"i", "ii", "iii"}));
    decompose->add_option("--out-a", de.out_a, "polarized component CSV")->required();
    decompose->add_option("--out-b", de.out_b, "remainder component CSV")->required();
    decompose->add_option("--report", de.report_path, "optional JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) return cmd_synth(sy);
        if (*analyze) return cmd_analyze(an);
        if (*filter) return cmd_filter(fi);
        if (*noise) return cmd_noise(no);
        if (*wiener) return cmd_wiener(wi);
        if (*decompose) return cmd_decompose(de);
    } catch (const bivar::io::ParseError& e) {
        std::fprintf(stderr, "bivar: %s\n", e.what());
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "bivar: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "bivar: %s\n", e.what());
        return kExitNumerical;
    }
    return 0;
}
