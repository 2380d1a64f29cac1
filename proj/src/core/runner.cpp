#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "csvio.hpp"
#include "version.hpp"

namespace polardqc {

namespace {

std::string point_tag(size_t k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "p%03zu", k);
    return buf;
}

std::string meta_text(const RunConfig& cfg, double scale, double t1_fs) {
    std::string out;
    out += "# polardqc " + std::string(kVersion) + "\n";
    out += "# spec_hash = " + [&] {
        char buf[20];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
        return std::string(buf);
    }() + "\n";
    out += "# gt_scale = " + fmt_exact(scale) + "\n";
    out += "# t1_fs = " + fmt_exact(t1_fs) + "\n";
    out += canonical_config_text(cfg);
    return out;
}

} // namespace

RunOutputs run_spectrum_files(const RunConfig& cfg, const std::string& outdir, int threads) {
    cfg.grid.validate();
    SweepResult sweep = coupling_sweep(make_system(cfg, 1.0), cfg.sweep, cfg.grid, cfg.t1_fs, threads);

    // render everything up front; only then touch the file system
    struct Rendered {
        std::string tag, grid, meta, peaks;
    };
    std::vector<Rendered> files;
    const std::uint64_t hash = config_hash(cfg);
    for (size_t k = 0; k < sweep.points.size(); ++k) {
        auto& pt = sweep.points[k];
        pt.grid.spec_hash = hash;
        SystemSpec spec = make_system(cfg, pt.scale);
        const TransitionTable table = transition_dipoles(pt.system, spec);
        std::vector<Peak> peaks =
            find_peaks(pt.grid, Component::Total, cfg.threshold, cfg.min_separation);
        assign_peaks(peaks, table, Component::Total, cfg.assign_tolerance);
        Rendered r;
        r.tag = point_tag(k);
        r.grid = grid_csv(pt.grid);
        r.meta = meta_text(cfg, pt.scale, cfg.t1_fs);
        r.peaks = peaks_csv(peaks);
        files.push_back(std::move(r));
    }

    std::filesystem::create_directories(outdir);
    RunOutputs out;
    for (const auto& r : files) {
        const std::string base = outdir + "/" + r.tag;
        write_text_file(base + "_spectrum.csv", r.grid);
        out.files.push_back(base + "_spectrum.csv");
        write_text_file(base + "_meta.cfg", r.meta);
        out.files.push_back(base + "_meta.cfg");
        write_text_file(base + "_peaks.csv", r.peaks);
        out.files.push_back(base + "_peaks.csv");
    }
    return out;
}

RunOutputs run_levels_files(const RunConfig& cfg, const std::string& outdir) {
    struct Rendered {
        std::string tag, levels, transitions, anharm;
    };
    std::vector<Rendered> files;
    std::vector<int> branch_e, branch_f;
    PolaritonSystem prev_sys;
    for (size_t k = 0; k < cfg.sweep.size(); ++k) {
        const SystemSpec spec = make_system(cfg, cfg.sweep[k]);
        const PolaritonSystem sys = diagonalize_system(spec);
        const TransitionTable table = transition_dipoles(sys, spec);
        if (k == 0) {
            branch_e.resize(sys.e.basis.dim());
            branch_f.resize(sys.f.basis.dim());
            for (size_t i = 0; i < branch_e.size(); ++i) branch_e[i] = static_cast<int>(i);
            for (size_t i = 0; i < branch_f.size(); ++i) branch_f[i] = static_cast<int>(i);
        } else {
            branch_e = match_polariton_branches(prev_sys.e.vectors, sys.e.vectors, branch_e);
            branch_f = match_polariton_branches(prev_sys.f.vectors, sys.f.vectors, branch_f);
        }
        Rendered r;
        r.tag = point_tag(k);
        r.levels = levels_csv(sys, branch_e, branch_f);
        r.transitions = transitions_csv(table);
        r.anharm = anharmonicity_csv(sys, spec);
        files.push_back(std::move(r));
        prev_sys = sys;
    }

    std::filesystem::create_directories(outdir);
    RunOutputs out;
    for (const auto& r : files) {
        const std::string base = outdir + "/" + r.tag;
        write_text_file(base + "_levels.csv", r.levels);
        out.files.push_back(base + "_levels.csv");
        write_text_file(base + "_transitions.csv", r.transitions);
        out.files.push_back(base + "_transitions.csv");
        write_text_file(base + "_anharmonicity.csv", r.anharm);
        out.files.push_back(base + "_anharmonicity.csv");
    }
    return out;
}

bool SelfcheckResult::all_pass() const {
    for (const auto& it : items)
        if (!it.pass) return false;
    return true;
}

namespace {

SystemSpec single_mode_spec(double gt, double delta11, DephasingModel model, double override_gamma) {
    SystemSpec s;
    s.modes = {{1625.0, 20.0, 1.0, 1.0}};
    s.cavity = {1625.0, 0.0, 0.5, 0.0, 1.0};
    s.J = Eigen::MatrixXd::Zero(1, 1);
    s.Delta = Eigen::MatrixXd::Constant(1, 1, delta11);
    s.gt = {gt};
    s.dephasing = model;
    s.gamma_override = override_gamma;
    return s;
}

SystemSpec two_mode_spec(double gt, bool harmonic, DephasingModel model, double override_gamma) {
    SystemSpec s;
    s.modes = {{1625.0, 20.0, 1.0, 1.0}, {1545.0, 20.0, 0.5, 1.0}};
    s.cavity = {1625.0, 0.0, 0.5, 0.0, 1.0};
    s.J.resize(2, 2);
    s.J << 0, 15, 15, 0;
    s.Delta.resize(2, 2);
    if (harmonic)
        s.Delta.setZero();
    else
        s.Delta << 15, 10, 10, 11;
    s.gt = {gt, gt};
    s.dephasing = model;
    s.gamma_override = override_gamma;
    return s;
}

} // namespace

SelfcheckResult run_selfcheck(const SelfcheckOptions& opts) {
    SelfcheckResult res;
    auto add = [&](const std::string& name, bool pass, double residual, const std::string& note) {
        res.items.push_back({name, pass, residual, note});
    };

    // hermiticity of every block, both presets, a few couplings
    {
        double worst = 0.0;
        for (double gt : {0.0, 30.0, 80.0}) {
            for (int two : {0, 1}) {
                const SystemSpec spec = two ? two_mode_spec(gt, false, DephasingModel::Composition, 0.0)
                                            : single_mode_spec(gt, 15.0, DephasingModel::Composition, 0.0);
                for (int n = 0; n <= 2; ++n) {
                    const HermitianBlock b = build_block(spec, n);
                    const double scale = std::max(1.0, b.matrix.cwiseAbs().maxCoeff());
                    worst = std::max(worst,
                                     (b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() / scale);
                }
            }
        }
        add("hermiticity", worst <= 1e-12, worst, "max relative block asymmetry");
    }

    // excitation-number conservation (no inter-manifold leakage)
    {
        const auto chk = conserves_excitation(two_mode_spec(45.0, false, DephasingModel::Composition, 0.0));
        add("excitation-conservation", chk.conserved, chk.max_off_block, "max inter-manifold element");
    }

    // vacuum Rabi splitting 2 gt at zero detuning
    {
        double worst = 0.0;
        for (double gt : {1.0, 20.0, 50.0, 80.0}) {
            const PolaritonSystem sys = diagonalize_system(single_mode_spec(gt, 15.0, DephasingModel::Composition, 0.0));
            const double gap = sys.e.energies[1] - sys.e.energies[0];
            worst = std::max(worst, std::abs(gap - 2.0 * gt) / (2.0 * gt));
        }
        add("rabi-splitting", worst <= 1e-9, worst, "relative gap error vs 2 gt");
    }

    // harmonic null: Delta = 0 kills the two-quantum signal
    {
        FrequencyGrid coarse;
        coarse.w2_step = 2.0;
        coarse.w3_step = 2.0;
        double worst = 0.0;
        for (double gt : {0.0, 20.0, 50.0, 80.0}) {
            for (int two : {0, 1}) {
                const SystemSpec spec = two ? two_mode_spec(gt, true, DephasingModel::Flat, 20.0)
                                            : single_mode_spec(gt, 0.0, DephasingModel::Flat, 20.0);
                const SpectrumGrid g = spectrum(spec, coarse, 0.0, opts.threads);
                const double denom = g.max_abs(Component::PathwayI);
                if (denom > 0.0) worst = std::max(worst, g.max_abs(Component::Total) / denom);
            }
        }
        add("harmonic-null", worst <= 1e-8, worst, "max |S|/|S_i| over harmonic systems");
    }

    // Fourier consistency of the two signal routes
    {
        const SystemSpec spec = single_mode_spec(50.0, 15.0, DephasingModel::Flat, 20.0);
        const PolaritonSystem sys = diagonalize_system(spec);
        const FourierCheck chk =
            fourier_consistency(transition_dipoles(sys, spec), FrequencyGrid{}, opts.threads);
        add("fourier-consistency", chk.max_rel_err_far < 0.02, chk.max_rel_err_far,
            "max relative FFT mismatch away from poles");
    }

    // effective-coupling algebra; the injectable sign bug is the mutation
    // sentinel proving this check can fail
    {
        auto eff = [&](double g, double n, double kappa, double gamma) {
            if (opts.inject_kappa_sign_bug) {
                const double half = 0.5 * (kappa + gamma);
                const double rad = n * g * g - half * half;
                return rad < 0.0 ? -1.0 : std::sqrt(rad);
            }
            return effective_coupling(g, n, kappa, gamma);
        };
        double worst = 0.0;
        worst = std::max(worst, std::abs(eff(50.0, 1.0, 0.0, 20.0) - std::sqrt(2400.0)) / std::sqrt(2400.0));
        for (double g : {5.0, 37.5, 80.0}) // kappa = gamma collapses to sqrt(N) g
            worst = std::max(worst, std::abs(eff(g, 4.0, 12.0, 12.0) - 2.0 * g) / (2.0 * g));
        add("effective-coupling", worst <= 1e-12, worst, "relative deviation from closed forms");
    }

    return res;
}

std::string selfcheck_report(const SelfcheckResult& res) {
    std::ostringstream os;
    for (const auto& it : res.items) {
        os << (it.pass ? "[PASS] " : "[FAIL] ") << it.name << ": " << it.note << " = ";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", it.residual);
        os << buf << "\n";
    }
    os << (res.all_pass() ? "selfcheck: all invariants hold\n" : "selfcheck: FAILURES present\n");
    return os.str();
}

} // namespace polardqc
