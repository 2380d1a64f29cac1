// Command-line front end. Talks to the simulator exclusively through the
// shared-library C API.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "polardqc.h"

namespace {

struct ConfigDeleter {
    void operator()(pdq_config* c) const { pdq_config_free(c); }
};
struct SystemDeleter {
    void operator()(pdq_system* s) const { pdq_system_free(s); }
};
struct SpectrumDeleter {
    void operator()(pdq_spectrum* s) const { pdq_spectrum_free(s); }
};
struct PeaksDeleter {
    void operator()(pdq_peaks* p) const { pdq_peaks_free(p); }
};

using ConfigPtr = std::unique_ptr<pdq_config, ConfigDeleter>;
using SystemPtr = std::unique_ptr<pdq_system, SystemDeleter>;
using SpectrumPtr = std::unique_ptr<pdq_spectrum, SpectrumDeleter>;
using PeaksPtr = std::unique_ptr<pdq_peaks, PeaksDeleter>;

[[noreturn]] void die(pdq_status st, const char* what) {
    std::fprintf(stderr, "error: %s: %s (%s)\n", what, pdq_last_error(), pdq_status_name(st));
    std::exit(1);
}

void check(pdq_status st, const char* what) {
    if (st != PDQ_OK) die(st, what);
}

struct CommonOpts {
    std::string config_path, preset;
    std::vector<double> gt;
    double t1 = -1.0; // <0: keep config value
    std::string grid;
    std::string out = "out";
    double threshold = -1.0;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_out = true) {
    cmd->add_option("--config", o.config_path, "run configuration file");
    cmd->add_option("--preset", o.preset, "bundled parameter set (amide-I, amide-I+II)");
    cmd->add_option("--gt", o.gt, "effective-coupling sweep values (cm^-1)")->delimiter(',');
    cmd->add_option("--t1", o.t1, "first delay t1 in fs");
    cmd->add_option("--grid", o.grid, "lo2:hi2:step2,lo3:hi3:step3 (cm^-1)");
    if (with_out) cmd->add_option("--out", o.out, "output directory (default: out)");
    cmd->add_option("--threshold", o.threshold, "peak threshold fraction of the maximum");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

ConfigPtr load(const CommonOpts& o, bool single_point) {
    if (o.config_path.empty() == o.preset.empty()) {
        std::fprintf(stderr, "error: give exactly one of --config or --preset\n");
        std::exit(1);
    }
    pdq_config* raw = nullptr;
    if (!o.config_path.empty())
        check(pdq_config_from_file(o.config_path.c_str(), &raw), "loading config");
    else
        check(pdq_config_from_preset(o.preset.c_str(), &raw), "loading preset");
    ConfigPtr cfg(raw);

    if (!o.gt.empty()) {
        if (single_point && o.gt.size() != 1) {
            std::fprintf(stderr, "error: this command takes a single --gt value; use 'sweep'\n");
            std::exit(1);
        }
        std::string list;
        for (size_t i = 0; i < o.gt.size(); ++i) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", o.gt[i]);
            list += (i ? " " : "") + std::string(buf);
        }
        check(pdq_config_set(cfg.get(), "signal.sweep", list.c_str()), "setting sweep");
    } else if (single_point) {
        // keep only the first configured sweep value
        double first = 0.0;
        int count = 0;
        check(pdq_config_sweep(cfg.get(), &first, 1, &count), "reading sweep");
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", first);
        check(pdq_config_set(cfg.get(), "signal.sweep", buf), "setting sweep");
    }
    if (o.t1 >= 0.0) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", o.t1);
        check(pdq_config_set(cfg.get(), "signal.t1", buf), "setting t1");
    }
    if (!o.grid.empty()) check(pdq_config_set(cfg.get(), "signal.grid", o.grid.c_str()), "setting grid");
    if (o.threshold >= 0.0) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", o.threshold);
        check(pdq_config_set(cfg.get(), "analysis.threshold", buf), "setting threshold");
    }
    return cfg;
}

double get_num(const pdq_config* cfg, const char* key) {
    char buf[128];
    check(pdq_config_get(cfg, key, buf, sizeof buf), key);
    return std::strtod(buf, nullptr);
}

int run_files(const CommonOpts& o, bool single_point) {
    ConfigPtr cfg = load(o, single_point);
    check(pdq_run_spectrum(cfg.get(), o.out.c_str(), o.threads), "computing spectra");
    double sw[64];
    int count = 0;
    check(pdq_config_sweep(cfg.get(), sw, 64, &count), "reading sweep");
    std::printf("wrote %d sweep point(s) (spectrum, meta, peaks) to %s/\n", count, o.out.c_str());
    return 0;
}

int run_peaks(const CommonOpts& o, const std::string& component) {
    ConfigPtr cfg = load(o, true);
    double scale = 0.0;
    int count = 0;
    check(pdq_config_sweep(cfg.get(), &scale, 1, &count), "reading sweep");

    pdq_system* sys_raw = nullptr;
    check(pdq_system_build(cfg.get(), scale, &sys_raw), "building system");
    SystemPtr sys(sys_raw);

    pdq_grid grid;
    {
        char buf[128];
        check(pdq_config_get(cfg.get(), "signal.grid", buf, sizeof buf), "reading grid");
        if (std::sscanf(buf, "%lf:%lf:%lf,%lf:%lf:%lf", &grid.w2_lo, &grid.w2_hi, &grid.w2_step,
                        &grid.w3_lo, &grid.w3_hi, &grid.w3_step) != 6)
            die(PDQ_E_INTERNAL, "parsing grid");
    }
    pdq_spectrum* sp_raw = nullptr;
    check(pdq_spectrum_compute(sys.get(), &grid, get_num(cfg.get(), "signal.t1"), o.threads, &sp_raw),
          "computing spectrum");
    SpectrumPtr sp(sp_raw);

    const int comp = component == "i" ? PDQ_PATHWAY_I : (component == "ii" ? PDQ_PATHWAY_II : PDQ_TOTAL);
    pdq_peaks* pk_raw = nullptr;
    check(pdq_peaks_find(sp.get(), sys.get(), comp, get_num(cfg.get(), "analysis.threshold"),
                         get_num(cfg.get(), "analysis.min_separation"),
                         get_num(cfg.get(), "analysis.assign_tolerance"), &pk_raw),
          "picking peaks");
    PeaksPtr pk(pk_raw);

    std::printf("%-10s %-10s %-12s %-24s %s\n", "w3", "w2", "height", "label", "residual");
    for (int i = 0; i < pdq_peaks_count(pk.get()); ++i) {
        pdq_peak_info info;
        check(pdq_peaks_get(pk.get(), i, &info), "reading peak");
        std::printf("%-10.2f %-10.2f %-12.4g %-24s %.3g\n", info.w3, info.w2, info.height,
                    info.label, info.residual);
    }
    if (!o.out.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(o.out, ec);
        check(pdq_peaks_write_csv(pk.get(), (o.out + "/peaks.csv").c_str()), "writing peaks csv");
        std::printf("wrote %s/peaks.csv\n", o.out.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polardqc: double-quantum-coherence 2D IR spectra of cavity vibrational polaritons"};
    app.set_version_flag("--version", std::string(pdq_version()));
    app.require_subcommand(1);

    CommonOpts so, wo, po, lo;
    std::string peak_component = "total";

    CLI::App* spectrum = app.add_subcommand("spectrum", "compute one spectrum and write grid/meta/peak files");
    add_common(spectrum, so);

    CLI::App* sweep = app.add_subcommand("sweep", "compute spectra for a list of coupling strengths");
    add_common(sweep, wo);

    CLI::App* peaks = app.add_subcommand("peaks", "pick and assign peaks of one spectrum");
    add_common(peaks, po);
    peaks->add_option("--component", peak_component, "i, ii or total (default total)");

    CLI::App* levels = app.add_subcommand("levels", "export energy/dipole/anharmonicity tables");
    add_common(levels, lo);

    CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the built-in invariant suite");
    int sc_threads = 0;
    bool sc_inject = false;
    selfcheck->add_option("--threads", sc_threads, "worker threads (0 = hardware)");
    selfcheck->add_flag("--inject-kappa-sign-bug", sc_inject,
                        "mutation fixture: flip a sign and prove the suite notices");

    CLI11_PARSE(app, argc, argv);

    if (spectrum->parsed()) return run_files(so, true);
    if (sweep->parsed()) return run_files(wo, false);
    if (peaks->parsed()) return run_peaks(po, peak_component);
    if (levels->parsed()) {
        ConfigPtr cfg = load(lo, false);
        check(pdq_run_levels(cfg.get(), lo.out.c_str()), "exporting levels");
        std::printf("wrote level/transition/anharmonicity tables to %s/\n", lo.out.c_str());
        return 0;
    }
    if (selfcheck->parsed()) {
        char* report = nullptr;
        int failed = 0;
        const pdq_status st = pdq_selfcheck(sc_inject ? PDQ_SELFCHECK_INJECT_KAPPA_SIGN_BUG : 0u,
                                            sc_threads, &report, &failed);
        if (report) {
            std::fputs(report, stdout);
            pdq_string_free(report);
        }
        if (st != PDQ_OK && failed == 0) die(st, "selfcheck");
        return failed > 0 ? 1 : 0;
    }
    return 0;
}
