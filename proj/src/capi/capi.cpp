#include "polardqc.h"

#include <cstdio>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/csvio.hpp"
#include "core/peaks.hpp"
#include "core/runner.hpp"
#include "core/version.hpp"

using namespace polardqc;

struct pdq_config {
    RunConfig cfg;
};
struct pdq_system {
    SystemSpec spec;
    PolaritonSystem sys;
    TransitionTable table;
};
struct pdq_spectrum {
    SpectrumGrid grid;
};
struct pdq_peaks {
    std::vector<Peak> peaks;
};

namespace {

thread_local std::string g_last_error;

pdq_status status_of(const Error& e) {
    switch (e.code()) {
        case ErrorCode::Parse: return PDQ_E_PARSE;
        case ErrorCode::Validate: return PDQ_E_VALIDATE;
        case ErrorCode::Domain: return PDQ_E_DOMAIN;
        case ErrorCode::WeakCoupling: return PDQ_E_WEAK_COUPLING;
        case ErrorCode::NotFound: return PDQ_E_NOT_FOUND;
        case ErrorCode::Io: return PDQ_E_IO;
        case ErrorCode::Internal: return PDQ_E_INTERNAL;
    }
    return PDQ_E_INTERNAL;
}

template <typename Fn>
pdq_status guarded(Fn&& fn) {
    try {
        fn();
        return PDQ_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return PDQ_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PDQ_E_INTERNAL;
    }
}

pdq_status arg_error(const char* msg) {
    g_last_error = msg;
    return PDQ_E_ARGUMENT;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

pdq_status copy_vector(const Eigen::VectorXd& v, double* out, int cap, const char* who) {
    if (!out) return arg_error("null output buffer");
    if (cap < v.size()) {
        g_last_error = std::string(who) + ": buffer too small";
        return PDQ_E_ARGUMENT;
    }
    for (int i = 0; i < v.size(); ++i) out[i] = v[i];
    return PDQ_OK;
}

FrequencyGrid to_grid(const pdq_grid& g) {
    FrequencyGrid out;
    out.w2_lo = g.w2_lo;
    out.w2_hi = g.w2_hi;
    out.w2_step = g.w2_step;
    out.w3_lo = g.w3_lo;
    out.w3_hi = g.w3_hi;
    out.w3_step = g.w3_step;
    return out;
}

} // namespace

extern "C" {

const char* pdq_status_name(pdq_status s) {
    switch (s) {
        case PDQ_OK: return "ok";
        case PDQ_E_ARGUMENT: return "invalid argument";
        case PDQ_E_PARSE: return "parse error";
        case PDQ_E_VALIDATE: return "validation error";
        case PDQ_E_DOMAIN: return "domain error";
        case PDQ_E_WEAK_COUPLING: return "weak coupling";
        case PDQ_E_NOT_FOUND: return "not found";
        case PDQ_E_IO: return "io error";
        case PDQ_E_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* pdq_last_error(void) { return g_last_error.c_str(); }

const char* pdq_version(void) { return kVersion; }

void pdq_string_free(char* s) { delete[] s; }

/* ---- configuration ------------------------------------------------- */

pdq_status pdq_config_from_file(const char* path, pdq_config** out) {
    if (!path || !out) return arg_error("pdq_config_from_file: null argument");
    return guarded([&] { *out = new pdq_config{load_config(path)}; });
}

pdq_status pdq_config_from_preset(const char* name, pdq_config** out) {
    if (!name || !out) return arg_error("pdq_config_from_preset: null argument");
    return guarded([&] { *out = new pdq_config{preset_config(name)}; });
}

pdq_status pdq_config_set(pdq_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return arg_error("pdq_config_set: null argument");
    return guarded([&] {
        // Route the edit through the canonical text and the parser so the
        // value syntax and diagnostics are exactly those of config files.
        // Mode fields are addressed as mode1.omega, mode2.mu, ...
        const std::string k(key), v(value);
        const auto dot = k.find('.');
        if (dot == std::string::npos)
            fail(ErrorCode::Parse, "pdq_config_set: key must be 'section.key', got '" + k + "'");
        std::string section = k.substr(0, dot);
        const std::string field = k.substr(dot + 1);
        int mode_no = 0;
        if (section.rfind("mode", 0) == 0 && section.size() > 4) {
            mode_no = std::stoi(section.substr(4));
            section = "mode";
        } else if (section == "mode") {
            mode_no = 1;
        }

        const std::string text = canonical_config_text(cfg->cfg);
        std::string out_text;
        std::string cur;
        int cur_mode = 0;
        bool replaced = false;
        size_t pos = 0;
        while (pos <= text.size()) {
            const size_t nl = text.find('\n', pos);
            std::string line =
                text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
            if (!line.empty() && line.front() == '[') {
                cur = line.substr(1, line.size() - 2);
                if (cur == "mode") ++cur_mode;
            } else if (!replaced && cur == section && (section != "mode" || cur_mode == mode_no)) {
                const auto eq = line.find('=');
                if (eq != std::string::npos) {
                    std::string name = line.substr(0, eq);
                    while (!name.empty() && name.back() == ' ') name.pop_back();
                    if (name == field) {
                        line = field + " = " + v;
                        replaced = true;
                    }
                }
            }
            out_text += line;
            if (nl == std::string::npos) break;
            out_text += '\n';
            pos = nl + 1;
        }
        if (!replaced)
            fail(ErrorCode::Parse, "pdq_config_set: no field '" + field + "' in section [" +
                                       section + (mode_no ? std::to_string(mode_no) : "") + "]");
        cfg->cfg = parse_config_text(out_text, "pdq_config_set");
    });
}

pdq_status pdq_config_get(const pdq_config* cfg, const char* key, char* buf, size_t cap) {
    if (!cfg || !key || !buf || cap == 0) return arg_error("pdq_config_get: null argument");
    return guarded([&] {
        const std::string k(key);
        const auto dot = k.find('.');
        if (dot == std::string::npos)
            fail(ErrorCode::Parse, "pdq_config_get: key must be 'section.key', got '" + k + "'");
        std::string section = k.substr(0, dot);
        const std::string field = k.substr(dot + 1);
        int mode_no = 0;
        if (section.rfind("mode", 0) == 0 && section.size() > 4) {
            mode_no = std::stoi(section.substr(4));
            section = "mode";
        } else if (section == "mode") {
            mode_no = 1;
        }
        const std::string text = canonical_config_text(cfg->cfg);
        std::string cur;
        int cur_mode = 0;
        size_t pos = 0;
        while (pos <= text.size()) {
            const size_t nl = text.find('\n', pos);
            const std::string line =
                text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
            if (!line.empty() && line.front() == '[') {
                cur = line.substr(1, line.size() - 2);
                if (cur == "mode") ++cur_mode;
            } else if (cur == section && (section != "mode" || cur_mode == mode_no)) {
                const auto eq = line.find('=');
                if (eq != std::string::npos) {
                    std::string name = line.substr(0, eq);
                    while (!name.empty() && name.back() == ' ') name.pop_back();
                    if (name == field) {
                        std::string val = line.substr(eq + 1);
                        while (!val.empty() && val.front() == ' ') val.erase(val.begin());
                        if (val.size() + 1 > cap) fail(ErrorCode::Internal, "pdq_config_get: buffer too small");
                        std::memcpy(buf, val.c_str(), val.size() + 1);
                        return;
                    }
                }
            }
            if (nl == std::string::npos) break;
            pos = nl + 1;
        }
        fail(ErrorCode::NotFound, "pdq_config_get: no field '" + field + "' in [" + section + "]");
    });
}

pdq_status pdq_config_text(const pdq_config* cfg, char** out_text) {
    if (!cfg || !out_text) return arg_error("pdq_config_text: null argument");
    return guarded([&] { *out_text = dup_string(canonical_config_text(cfg->cfg)); });
}

int pdq_config_mode_count(const pdq_config* cfg) { return cfg ? cfg->cfg.mode_count() : 0; }

pdq_status pdq_config_sweep(const pdq_config* cfg, double* values, int cap, int* count) {
    if (!cfg || !count) return arg_error("pdq_config_sweep: null argument");
    *count = static_cast<int>(cfg->cfg.sweep.size());
    if (values) {
        if (cap < *count) return arg_error("pdq_config_sweep: buffer too small");
        for (int i = 0; i < *count; ++i) values[i] = cfg->cfg.sweep[i];
    }
    return PDQ_OK;
}

void pdq_config_free(pdq_config* cfg) { delete cfg; }

/* ---- polariton system ---------------------------------------------- */

pdq_status pdq_system_build(const pdq_config* cfg, double gt_scale, pdq_system** out) {
    if (!cfg || !out) return arg_error("pdq_system_build: null argument");
    return guarded([&] {
        auto sys = std::make_unique<pdq_system>();
        sys->spec = make_system(cfg->cfg, gt_scale);
        sys->sys = diagonalize_system(sys->spec);
        sys->table = transition_dipoles(sys->sys, sys->spec);
        *out = sys.release();
    });
}

int pdq_system_manifold_dim(const pdq_system* sys, int n) {
    if (!sys || n < 0 || n > 2) return 0;
    return sys->sys.manifold(n).basis.dim();
}

pdq_status pdq_system_energies(const pdq_system* sys, int n, double* out, int cap) {
    if (!sys || n < 0 || n > 2) return arg_error("pdq_system_energies: bad argument");
    return copy_vector(sys->sys.manifold(n).energies, out, cap, "pdq_system_energies");
}

pdq_status pdq_system_linewidths(const pdq_system* sys, int n, double* out, int cap) {
    if (!sys || n < 0 || n > 2) return arg_error("pdq_system_linewidths: bad argument");
    return copy_vector(sys->sys.manifold(n).linewidths, out, cap, "pdq_system_linewidths");
}

pdq_status pdq_system_dipoles_eg(const pdq_system* sys, double* out, int cap) {
    if (!sys) return arg_error("pdq_system_dipoles_eg: null handle");
    return copy_vector(sys->table.mu_eg, out, cap, "pdq_system_dipoles_eg");
}

pdq_status pdq_system_dipoles_fe(const pdq_system* sys, double* out, int cap) {
    if (!sys || !out) return arg_error("pdq_system_dipoles_fe: null argument");
    const auto& m = sys->table.mu_fe;
    if (cap < m.rows() * m.cols()) return arg_error("pdq_system_dipoles_fe: buffer too small");
    for (int f = 0; f < m.rows(); ++f)
        for (int e = 0; e < m.cols(); ++e) out[f * m.cols() + e] = m(f, e);
    return PDQ_OK;
}

pdq_status pdq_system_cavity_frequency(const pdq_system* sys, double* out) {
    if (!sys || !out) return arg_error("pdq_system_cavity_frequency: null argument");
    return guarded([&] { *out = cavity_frequency(sys->spec.cavity); });
}

void pdq_system_free(pdq_system* sys) { delete sys; }

/* ---- spectra -------------------------------------------------------- */

pdq_status pdq_spectrum_compute(const pdq_system* sys, const pdq_grid* grid, double t1_fs,
                                int threads, pdq_spectrum** out) {
    if (!sys || !grid || !out) return arg_error("pdq_spectrum_compute: null argument");
    return guarded(
        [&] { *out = new pdq_spectrum{spectrum(sys->table, to_grid(*grid), t1_fs, threads)}; });
}

int pdq_spectrum_n2(const pdq_spectrum* sp) { return sp ? sp->grid.grid.n2() : 0; }
int pdq_spectrum_n3(const pdq_spectrum* sp) { return sp ? sp->grid.grid.n3() : 0; }

pdq_status pdq_spectrum_copy(const pdq_spectrum* sp, int component, double* out, size_t cap) {
    if (!sp || !out || component < 0 || component > 2)
        return arg_error("pdq_spectrum_copy: bad argument");
    const auto& v = component == PDQ_PATHWAY_I
                        ? sp->grid.s_i
                        : (component == PDQ_PATHWAY_II ? sp->grid.s_ii : sp->grid.s_total);
    if (cap < 2 * v.size()) return arg_error("pdq_spectrum_copy: buffer too small");
    for (size_t k = 0; k < v.size(); ++k) {
        out[2 * k] = v[k].real();
        out[2 * k + 1] = v[k].imag();
    }
    return PDQ_OK;
}

pdq_status pdq_spectrum_write_csv(const pdq_spectrum* sp, const char* path) {
    if (!sp || !path) return arg_error("pdq_spectrum_write_csv: null argument");
    return guarded([&] { write_text_file(path, grid_csv(sp->grid)); });
}

pdq_status pdq_signal_at(const pdq_system* sys, double w3, double w2, double t1_fs, double s_i[2],
                         double s_ii[2]) {
    if (!sys || !s_i || !s_ii) return arg_error("pdq_signal_at: null argument");
    return guarded([&] {
        const SignalPoint p = signal_at(w3, w2, t1_fs, sys->table);
        s_i[0] = p.s_i.real();
        s_i[1] = p.s_i.imag();
        s_ii[0] = p.s_ii.real();
        s_ii[1] = p.s_ii.imag();
    });
}

pdq_status pdq_time_signal(const pdq_system* sys, double t3_fs, double t2_fs, double t1_fs,
                           double out[2]) {
    if (!sys || !out) return arg_error("pdq_time_signal: null argument");
    return guarded([&] {
        const auto v = time_signal(sys->table, t3_fs, t2_fs, t1_fs);
        out[0] = v.real();
        out[1] = v.imag();
    });
}

void pdq_spectrum_free(pdq_spectrum* sp) { delete sp; }

/* ---- peak analysis --------------------------------------------------- */

pdq_status pdq_peaks_find(const pdq_spectrum* sp, const pdq_system* sys, int component,
                          double threshold, double min_separation, double assign_tolerance,
                          pdq_peaks** out) {
    if (!sp || !sys || !out || component < 0 || component > 2)
        return arg_error("pdq_peaks_find: bad argument");
    return guarded([&] {
        const auto comp = static_cast<Component>(component);
        auto pk = std::make_unique<pdq_peaks>();
        pk->peaks = find_peaks(sp->grid, comp, threshold, min_separation);
        assign_peaks(pk->peaks, sys->table, comp, assign_tolerance);
        *out = pk.release();
    });
}

int pdq_peaks_count(const pdq_peaks* pk) { return pk ? static_cast<int>(pk->peaks.size()) : 0; }

pdq_status pdq_peaks_get(const pdq_peaks* pk, int index, pdq_peak_info* out) {
    if (!pk || !out || index < 0 || index >= static_cast<int>(pk->peaks.size()))
        return arg_error("pdq_peaks_get: bad argument");
    const Peak& p = pk->peaks[index];
    out->w3 = p.w3;
    out->w2 = p.w2;
    out->height = p.height;
    out->residual = p.residual();
    std::snprintf(out->label, sizeof out->label, "%s", p.label().c_str());
    return PDQ_OK;
}

pdq_status pdq_peaks_write_csv(const pdq_peaks* pk, const char* path) {
    if (!pk || !path) return arg_error("pdq_peaks_write_csv: null argument");
    return guarded([&] { write_text_file(path, peaks_csv(pk->peaks)); });
}

pdq_status pdq_peaks_splitting(const pdq_peaks* pk, int axis, const char* line_a,
                               const char* line_b, double* out) {
    if (!pk || !line_a || !line_b || !out || (axis != 2 && axis != 3))
        return arg_error("pdq_peaks_splitting: bad argument");
    return guarded([&] {
        *out = measure_splitting(pk->peaks, axis == 2 ? Axis::W2 : Axis::W3, line_a, line_b);
    });
}

pdq_status pdq_spectrum_axis_resonances(const pdq_spectrum* sp, int component, int axis,
                                        double threshold, int* out) {
    if (!sp || !out || component < 0 || component > 2 || (axis != 2 && axis != 3))
        return arg_error("pdq_spectrum_axis_resonances: bad argument");
    return guarded([&] {
        *out = count_axis_resonances(sp->grid, static_cast<Component>(component),
                                     axis == 2 ? Axis::W2 : Axis::W3, threshold);
    });
}

void pdq_peaks_free(pdq_peaks* pk) { delete pk; }

/* ---- file-producing runs -------------------------------------------- */

pdq_status pdq_run_spectrum(const pdq_config* cfg, const char* outdir, int threads) {
    if (!cfg || !outdir) return arg_error("pdq_run_spectrum: null argument");
    return guarded([&] { run_spectrum_files(cfg->cfg, outdir, threads); });
}

pdq_status pdq_run_levels(const pdq_config* cfg, const char* outdir) {
    if (!cfg || !outdir) return arg_error("pdq_run_levels: null argument");
    return guarded([&] { run_levels_files(cfg->cfg, outdir); });
}

/* ---- selfcheck -------------------------------------------------------- */

pdq_status pdq_selfcheck(unsigned flags, int threads, char** report, int* n_failed) {
    return guarded([&] {
        SelfcheckOptions opts;
        opts.inject_kappa_sign_bug = (flags & PDQ_SELFCHECK_INJECT_KAPPA_SIGN_BUG) != 0;
        opts.threads = threads;
        const SelfcheckResult res = run_selfcheck(opts);
        int failed = 0;
        for (const auto& it : res.items)
            if (!it.pass) ++failed;
        if (n_failed) *n_failed = failed;
        if (report) *report = dup_string(selfcheck_report(res));
        if (failed > 0)
            fail(ErrorCode::Internal, std::to_string(failed) + " selfcheck invariant(s) failed");
    });
}

} // extern "C"
