#include "csvio.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace polardqc {

std::string fmt12(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_exact(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

std::string grid_csv(const SpectrumGrid& g) {
    std::string out;
    out.reserve(static_cast<size_t>(g.grid.n2()) * g.grid.n3() * 96);
    out += "w2,w3,re_si,im_si,re_sii,im_sii,re_s,im_s\n";
    for (int i2 = 0; i2 < g.grid.n2(); ++i2) {
        for (int i3 = 0; i3 < g.grid.n3(); ++i3) {
            const auto& a = g.at(Component::PathwayI, i2, i3);
            const auto& b = g.at(Component::PathwayII, i2, i3);
            const auto& t = g.at(Component::Total, i2, i3);
            out += fmt12(g.grid.w2(i2));
            out += ',';
            out += fmt12(g.grid.w3(i3));
            out += ',';
            out += fmt12(a.real());
            out += ',';
            out += fmt12(a.imag());
            out += ',';
            out += fmt12(b.real());
            out += ',';
            out += fmt12(b.imag());
            out += ',';
            out += fmt12(t.real());
            out += ',';
            out += fmt12(t.imag());
            out += '\n';
        }
    }
    return out;
}

std::string peaks_csv(const std::vector<Peak>& peaks) {
    std::string out = "w3,w2,height,label,residual\n";
    for (const auto& p : peaks) {
        out += fmt12(p.w3);
        out += ',';
        out += fmt12(p.w2);
        out += ',';
        out += fmt12(p.height);
        out += ',';
        out += p.label();
        out += ',';
        out += fmt12(p.residual());
        out += '\n';
    }
    return out;
}

std::string levels_csv(const PolaritonSystem& sys, const std::vector<int>& branch_e,
                       const std::vector<int>& branch_f) {
    std::string out = "manifold,state,energy_cm1,gamma_cm1,branch\n";
    auto dump = [&](const PolaritonManifold& man, const std::vector<int>& branch) {
        for (int k = 0; k < man.basis.dim(); ++k) {
            out += man.label;
            out += ',';
            out += std::to_string(k + 1);
            out += ',';
            out += fmt12(man.energies[k]);
            out += ',';
            out += fmt12(man.linewidths[k]);
            out += ',';
            out += std::to_string((k < static_cast<int>(branch.size()) ? branch[k] : k) + 1);
            out += '\n';
        }
    };
    dump(sys.g, {});
    dump(sys.e, branch_e);
    dump(sys.f, branch_f);
    return out;
}

std::string transitions_csv(const TransitionTable& t) {
    std::string out = "type,upper,lower,omega_cm1,gamma_cm1,mu_debye\n";
    const int d1 = static_cast<int>(t.mu_eg.size());
    const int d2 = t.mu_fe.rows();
    for (int e = 0; e < d1; ++e) {
        out += "eg,e" + std::to_string(e + 1) + ",g,";
        out += fmt12(t.omega_eg[e]);
        out += ',';
        out += fmt12(t.gamma_eg[e]);
        out += ',';
        out += fmt12(t.mu_eg[e]);
        out += '\n';
    }
    for (int f = 0; f < d2; ++f) {
        out += "fg,f" + std::to_string(f + 1) + ",g,";
        out += fmt12(t.omega_fg[f]);
        out += ',';
        out += fmt12(t.gamma_fg[f]);
        out += ",0\n";
    }
    for (int f = 0; f < d2; ++f)
        for (int e = 0; e < d1; ++e) {
            out += "fe,f" + std::to_string(f + 1) + ",e" + std::to_string(e + 1) + ",";
            out += fmt12(t.omega_fe(f, e));
            out += ',';
            out += fmt12(t.gamma_fe(f, e));
            out += ',';
            out += fmt12(t.mu_fe(f, e));
            out += '\n';
        }
    return out;
}

std::string anharmonicity_csv(const PolaritonSystem& sys, const SystemSpec& spec) {
    std::string out = "f,pair,shift_cm1,overlap\n";
    for (const auto& s : polariton_anharmonicity_numeric(sys)) {
        out += "f" + std::to_string(s.f + 1) + ",e" + std::to_string(s.e_a + 1) + "e" +
               std::to_string(s.e_b + 1) + ",";
        out += fmt12(s.shift_cm1);
        out += ',';
        out += fmt12(s.overlap);
        out += '\n';
    }
    if (spec.mode_count() == 1) {
        // closed-form diagnostics next to the numeric shifts: the printed
        // single-mode formula, the half-Delta/32 text value and the |X|^4
        // table form at the actual one-quantum vibrational weight
        out += "# single-mode closed-form V~_11 diagnostics\n";
        try {
            out += "# formula," + fmt12(polariton_anharmonicity_formula(spec, 0, 0)) + "\n";
        } catch (const Error&) {
            out += "# formula,undefined (pole)\n";
        }
        out += "# text_delta_over_32," + fmt12(spec.Delta(0, 0) / 32.0) + "\n";
        double x2 = 0.0; // vibrational weight of the lowest polariton
        for (int b = 0; b < sys.e.basis.dim(); ++b)
            if (sys.e.basis.states[b][1] == 1) x2 = sys.e.vectors(b, 0) * sys.e.vectors(b, 0);
        out += "# table_form," + fmt12(polariton_anharmonicity_from_weights(spec, 0, 0, x2, x2)) + "\n";
    }
    return out;
}

} // namespace polardqc
