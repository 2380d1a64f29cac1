#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "csvio.hpp"

namespace polardqc {

namespace {

[[noreturn]] void parse_fail(const std::string& src, int line, const std::string& msg) {
    fail(ErrorCode::Parse, src + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& src, int line, const std::string& key, const std::string& v) {
    const char* s = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(s, &end);
    if (end == s || *end != '\0') parse_fail(src, line, "field '" + key + "': expected a number, got '" + v + "'");
    return x;
}

bool parse_bool(const std::string& src, int line, const std::string& key, const std::string& v) {
    if (v == "true" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "off" || v == "no") return false;
    parse_fail(src, line, "field '" + key + "': expected true/false (or on/off), got '" + v + "'");
}

std::vector<double> parse_list(const std::string& src, int line, const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::istringstream is(v);
    std::string tok;
    while (is >> tok) out.push_back(parse_double(src, line, key, tok));
    if (out.empty()) parse_fail(src, line, "field '" + key + "': expected at least one number");
    return out;
}

FrequencyGrid parse_grid(const std::string& src, int line, const std::string& v) {
    // lo2:hi2:step2,lo3:hi3:step3
    const auto comma = v.find(',');
    if (comma == std::string::npos) parse_fail(src, line, "grid: expected 'lo2:hi2:step2,lo3:hi3:step3'");
    auto axis = [&](const std::string& part, double& lo, double& hi, double& step) {
        const auto c1 = part.find(':');
        const auto c2 = part.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            parse_fail(src, line, "grid axis '" + part + "': expected lo:hi:step");
        lo = parse_double(src, line, "grid", part.substr(0, c1));
        hi = parse_double(src, line, "grid", part.substr(c1 + 1, c2 - c1 - 1));
        step = parse_double(src, line, "grid", part.substr(c2 + 1));
    };
    FrequencyGrid g;
    axis(v.substr(0, comma), g.w2_lo, g.w2_hi, g.w2_step);
    axis(v.substr(comma + 1), g.w3_lo, g.w3_hi, g.w3_step);
    return g;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& src) {
    RunConfig cfg;
    cfg.modes.clear();
    cfg.gt_base.clear();
    cfg.sweep.clear();

    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int line = 0;
    int mode_idx = -1;
    bool saw_sweep = false;

    while (std::getline(stream, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') parse_fail(src, line, "unterminated section header");
            section = s.substr(1, s.size() - 2);
            if (section == "mode") {
                cfg.modes.push_back(VibrationalMode{});
                mode_idx = static_cast<int>(cfg.modes.size()) - 1;
            } else if (section != "cavity" && section != "couplings" && section != "signal" &&
                       section != "analysis" && section != "provenance") {
                parse_fail(src, line, "unknown section [" + section + "]");
            }
            continue;
        }

        const auto eq = s.find('=');
        if (eq == std::string::npos) parse_fail(src, line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty()) parse_fail(src, line, "empty key");
        if (section.empty()) parse_fail(src, line, "key '" + key + "' outside any section");

        if (section == "cavity") {
            if (key == "omega0") cfg.cavity.omega0_cm1 = parse_double(src, line, key, val);
            else if (key == "theta") cfg.cavity.theta_deg = parse_double(src, line, key, val);
            else if (key == "n_eff") cfg.cavity.n_eff = parse_double(src, line, key, val);
            else if (key == "kappa") cfg.cavity.kappa_cm1 = parse_double(src, line, key, val);
            else if (key == "n_molecules") cfg.cavity.n_molecules = parse_double(src, line, key, val);
            else parse_fail(src, line, "unknown key '" + key + "' in [cavity]");
        } else if (section == "mode") {
            if (mode_idx < 0) parse_fail(src, line, "mode key outside a [mode] section");
            auto& md = cfg.modes[mode_idx];
            if (key == "omega") md.omega_cm1 = parse_double(src, line, key, val);
            else if (key == "gamma") md.gamma_cm1 = parse_double(src, line, key, val);
            else if (key == "mu") md.mu_debye = parse_double(src, line, key, val);
            else if (key == "cos") md.cos_align = parse_double(src, line, key, val);
            else parse_fail(src, line, "unknown key '" + key + "' in [mode]");
        } else if (section == "couplings") {
            if (key == "j") cfg.J = parse_list(src, line, key, val);
            else if (key == "delta") cfg.Delta = parse_list(src, line, key, val);
            else if (key == "gt_base") cfg.gt_base = parse_list(src, line, key, val);
            else if (key == "derive_gt") cfg.derive_gt = parse_bool(src, line, key, val);
            else if (key == "allow_weak_coupling") cfg.allow_weak_coupling = parse_bool(src, line, key, val);
            else parse_fail(src, line, "unknown key '" + key + "' in [couplings]");
        } else if (section == "signal") {
            if (key == "dephasing") {
                if (val == "composition") cfg.dephasing = DephasingModel::Composition;
                else if (val == "flat") cfg.dephasing = DephasingModel::Flat;
                else parse_fail(src, line, "dephasing must be 'composition' or 'flat', got '" + val + "'");
            } else if (key == "gamma_override") {
                cfg.gamma_override = parse_double(src, line, key, val);
            } else if (key == "cross_anharmonicity") cfg.cross_anharmonicity = parse_bool(src, line, key, val);
            else if (key == "cavity_leak_dipole") cfg.cavity_leak_dipole = parse_double(src, line, key, val);
            else if (key == "t1") cfg.t1_fs = parse_double(src, line, key, val);
            else if (key == "grid") cfg.grid = parse_grid(src, line, val);
            else if (key == "sweep") {
                cfg.sweep = parse_list(src, line, key, val);
                saw_sweep = true;
            } else parse_fail(src, line, "unknown key '" + key + "' in [signal]");
        } else if (section == "analysis") {
            if (key == "threshold") cfg.threshold = parse_double(src, line, key, val);
            else if (key == "assign_tolerance") cfg.assign_tolerance = parse_double(src, line, key, val);
            else if (key == "min_separation") cfg.min_separation = parse_double(src, line, key, val);
            else parse_fail(src, line, "unknown key '" + key + "' in [analysis]");
        } else if (section == "provenance") {
            if (key == "preset") cfg.preset_name = val;
            // other provenance keys (version, hash) are informational
        }
    }

    if (cfg.modes.empty()) fail(ErrorCode::Parse, src + ": no [mode] section found");
    // a positive flat override selects the flat model regardless of key order
    if (cfg.gamma_override > 0.0) cfg.dephasing = DephasingModel::Flat;
    const int m = cfg.mode_count();
    if (cfg.J.empty()) cfg.J.assign(static_cast<size_t>(m) * m, 0.0);
    if (cfg.Delta.empty()) cfg.Delta.assign(static_cast<size_t>(m) * m, 0.0);
    if (cfg.gt_base.empty()) cfg.gt_base.assign(m, 1.0);
    if (!saw_sweep) cfg.sweep = {1.0};

    auto check_matrix = [&](const std::vector<double>& v, const char* name, bool zero_diag) {
        if (static_cast<int>(v.size()) != m * m)
            fail(ErrorCode::Parse, src + ": " + name + " must have " + std::to_string(m * m) +
                                       " row-major entries for " + std::to_string(m) + " modes");
        for (int i = 0; i < m; ++i) {
            if (zero_diag && v[i * m + i] != 0.0)
                fail(ErrorCode::Parse, src + ": " + name + " diagonal must be zero");
            for (int j = 0; j < m; ++j)
                if (v[i * m + j] != v[j * m + i])
                    fail(ErrorCode::Parse, src + ": " + name + " must be symmetric");
        }
    };
    check_matrix(cfg.J, "j", true);
    check_matrix(cfg.Delta, "delta", false);
    if (static_cast<int>(cfg.gt_base.size()) != m)
        fail(ErrorCode::Parse, src + ": gt_base must list one value per mode");
    if (cfg.sweep.empty()) fail(ErrorCode::Parse, src + ": sweep must not be empty");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

namespace {

const std::string kPresetAmide1 = R"cfg(# NMA amide-I stretch resonant with a single-mode infrared cavity
[cavity]
omega0 = 1625
theta = 0
n_eff = 0.5
kappa = 0
n_molecules = 1

[mode]
omega = 1625
gamma = 20
mu = 1
cos = 1

[couplings]
j = 0
delta = 15
gt_base = 1
derive_gt = false

[signal]
dephasing = composition
gamma_override = 0
cross_anharmonicity = true
cavity_leak_dipole = 0
t1 = 0
grid = 2950:3450:1,1400:1850:1
sweep = 50

[analysis]
threshold = 0.05
assign_tolerance = 0
min_separation = 0

[provenance]
preset = amide-I
)cfg";

const std::string kPresetAmide12 = R"cfg(# NMA amide-I + amide-II pair coupled to a single-mode infrared cavity.
# The amide-II dipole is taken as half the amide-I one; the cavity couples to
# both modes with equal strength (fixed 1:1 ratio scaled by the sweep value).
[cavity]
omega0 = 1625
theta = 0
n_eff = 0.5
kappa = 0
n_molecules = 1

[mode]
omega = 1625
gamma = 20
mu = 1
cos = 1

[mode]
omega = 1545
gamma = 20
mu = 0.5
cos = 1

[couplings]
j = 0 15 15 0
delta = 15 10 10 11
gt_base = 1 1
derive_gt = false

[signal]
dephasing = composition
gamma_override = 0
cross_anharmonicity = true
cavity_leak_dipole = 0
t1 = 0
grid = 2950:3450:1,1400:1850:1
sweep = 60

[analysis]
threshold = 0.05
assign_tolerance = 0
min_separation = 0

[provenance]
preset = amide-I+II
)cfg";

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"amide-I", "amide-I+II"};
    return names;
}

const std::string& preset_text(const std::string& name) {
    if (name == "amide-I") return kPresetAmide1;
    if (name == "amide-I+II") return kPresetAmide12;
    fail(ErrorCode::NotFound, "unknown preset '" + name + "' (available: amide-I, amide-I+II)");
}

RunConfig preset_config(const std::string& name) {
    return parse_config_text(preset_text(name), "preset:" + name);
}

std::string canonical_config_text(const RunConfig& cfg) {
    const int m = cfg.mode_count();
    std::string out;
    auto kv = [&](const char* key, const std::string& val) {
        out += key;
        out += " = ";
        out += val;
        out += '\n';
    };
    auto num = [&](const char* key, double v) { kv(key, fmt_exact(v)); };
    auto boolean = [&](const char* key, bool v) { kv(key, v ? "true" : "false"); };
    auto list = [&](const char* key, const std::vector<double>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) s += ' ';
            s += fmt_exact(v[i]);
        }
        kv(key, s);
    };

    out += "[cavity]\n";
    num("omega0", cfg.cavity.omega0_cm1);
    num("theta", cfg.cavity.theta_deg);
    num("n_eff", cfg.cavity.n_eff);
    num("kappa", cfg.cavity.kappa_cm1);
    num("n_molecules", cfg.cavity.n_molecules);
    for (int i = 0; i < m; ++i) {
        out += "\n[mode]\n";
        num("omega", cfg.modes[i].omega_cm1);
        num("gamma", cfg.modes[i].gamma_cm1);
        num("mu", cfg.modes[i].mu_debye);
        num("cos", cfg.modes[i].cos_align);
    }
    out += "\n[couplings]\n";
    list("j", cfg.J);
    list("delta", cfg.Delta);
    list("gt_base", cfg.gt_base);
    boolean("derive_gt", cfg.derive_gt);
    boolean("allow_weak_coupling", cfg.allow_weak_coupling);
    out += "\n[signal]\n";
    kv("dephasing", cfg.dephasing == DephasingModel::Flat ? "flat" : "composition");
    num("gamma_override", cfg.gamma_override);
    boolean("cross_anharmonicity", cfg.cross_anharmonicity);
    num("cavity_leak_dipole", cfg.cavity_leak_dipole);
    num("t1", cfg.t1_fs);
    kv("grid", fmt_exact(cfg.grid.w2_lo) + ":" + fmt_exact(cfg.grid.w2_hi) + ":" +
                   fmt_exact(cfg.grid.w2_step) + "," + fmt_exact(cfg.grid.w3_lo) + ":" +
                   fmt_exact(cfg.grid.w3_hi) + ":" + fmt_exact(cfg.grid.w3_step));
    list("sweep", cfg.sweep);
    out += "\n[analysis]\n";
    num("threshold", cfg.threshold);
    num("assign_tolerance", cfg.assign_tolerance);
    num("min_separation", cfg.min_separation);
    if (!cfg.preset_name.empty()) {
        out += "\n[provenance]\n";
        kv("preset", cfg.preset_name);
    }
    return out;
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string text = canonical_config_text(cfg);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

SystemSpec make_system(const RunConfig& cfg, double gt_scale) {
    const int m = cfg.mode_count();
    SystemSpec spec;
    spec.modes = cfg.modes;
    spec.cavity = cfg.cavity;
    spec.J = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        cfg.J.data(), m, m);
    spec.Delta = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        cfg.Delta.data(), m, m);

    std::vector<double> base = cfg.gt_base;
    if (cfg.derive_gt) {
        // geometry path: single-molecule coupling from the cavity volume, then
        // the collective effective coupling with the configured N
        CavitySpec single = cfg.cavity;
        single.n_molecules = 1.0;
        for (int i = 0; i < m; ++i) {
            const double g1 = coupling_from_geometry(cfg.modes[i], single);
            try {
                base[i] = effective_coupling(g1, cfg.cavity.n_molecules, cfg.cavity.kappa_cm1,
                                             cfg.modes[i].gamma_cm1);
            } catch (const Error& err) {
                if (err.code() == ErrorCode::WeakCoupling && cfg.allow_weak_coupling)
                    base[i] = 0.0;
                else
                    throw;
            }
        }
    }
    spec.gt.resize(m);
    for (int i = 0; i < m; ++i) spec.gt[i] = base[i] * gt_scale;

    spec.dephasing = cfg.dephasing;
    spec.gamma_override = cfg.gamma_override;
    spec.cross_anharmonicity = cfg.cross_anharmonicity;
    spec.cavity_leak_dipole = cfg.cavity_leak_dipole;
    spec.validate();
    return spec;
}

} // namespace polardqc
