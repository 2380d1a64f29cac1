#include "signal.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "units.hpp"

namespace polardqc {

void FrequencyGrid::validate() const {
    if (!(w2_lo < w2_hi) || !(w3_lo < w3_hi))
        fail(ErrorCode::Validate, "grid: lo must be < hi on both axes");
    if (!(w2_step > 0.0) || !(w3_step > 0.0)) fail(ErrorCode::Validate, "grid: step must be > 0");
    if (n2() < 2 || n3() < 2) fail(ErrorCode::Validate, "grid: need at least 2 points per axis");
}

namespace {

inline void check_gamma(double g, const char* which) {
    if (g <= 0.0)
        fail(ErrorCode::Domain, std::string("signal evaluation: ") + which +
                                    " coherence has zero dephasing on a contributing pathway "
                                    "(pole on the real frequency axis)");
}

} // namespace

SignalPoint signal_at(double w3, double w2, double t1_fs, const TransitionTable& t) {
    const int d1 = static_cast<int>(t.mu_eg.size());
    const int d2 = t.mu_fe.rows();
    const double tau1 = units::optical_time(t1_fs);
    const std::complex<double> im(0.0, 1.0);

    SignalPoint out;
    for (int f = 0; f < d2; ++f) {
        // excitation-side sums over e, with the t1 phase attached to e
        std::complex<double> p_sum(0.0, 0.0);  // pathway i
        std::complex<double> p_sum3(0.0, 0.0); // pathway ii, includes the t3 resonance in e
        bool any = false;
        for (int e = 0; e < d1; ++e) {
            const double pe = t.mu_eg[e] * t.mu_fe(f, e);
            if (pe == 0.0) continue;
            any = true;
            check_gamma(t.gamma_eg[e], "e-g");
            check_gamma(t.gamma_fe(f, e), "f-e");
            const std::complex<double> phase =
                (tau1 == 0.0) ? std::complex<double>(1.0, 0.0)
                              : std::exp(im * t.omega_eg[e] * tau1 - t.gamma_eg[e] * tau1);
            p_sum += pe * phase;
            p_sum3 += pe * phase / (w3 - t.omega_fe(f, e) + im * t.gamma_fe(f, e));
        }
        if (!any) continue;
        check_gamma(t.gamma_fg[f], "f-g");
        const std::complex<double> l2 = 1.0 / (w2 - t.omega_fg[f] + im * t.gamma_fg[f]);

        // closure-side sum over e'
        std::complex<double> q_sum(0.0, 0.0);
        std::complex<double> q_res(0.0, 0.0);
        for (int ep = 0; ep < d1; ++ep) {
            const double qe = t.mu_eg[ep] * t.mu_fe(f, ep);
            if (qe == 0.0) continue;
            check_gamma(t.gamma_eg[ep], "e'-g");
            q_sum += qe;
            q_res += qe / (w3 - t.omega_eg[ep] + im * t.gamma_eg[ep]);
        }
        out.s_i += l2 * p_sum * q_res;
        out.s_ii -= l2 * p_sum3 * q_sum;
    }
    return out;
}

double SpectrumGrid::max_abs(Component c) const {
    const auto& v = (c == Component::PathwayI) ? s_i : (c == Component::PathwayII ? s_ii : s_total);
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

SpectrumGrid spectrum(const TransitionTable& table, const FrequencyGrid& grid, double t1_fs, int threads) {
    grid.validate();
    SpectrumGrid out;
    out.grid = grid;
    out.t1_fs = t1_fs;
    const int n2 = grid.n2(), n3 = grid.n3();
    out.s_i.resize(static_cast<size_t>(n2) * n3);
    out.s_ii.resize(out.s_i.size());
    out.s_total.resize(out.s_i.size());

    // Probe one point first so a domain error surfaces before threads start.
    (void)signal_at(grid.w3(0), grid.w2(0), t1_fs, table);

    int nw = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nw = std::clamp(nw, 1, n2);
    auto rows = [&](int i2_begin, int i2_end) {
        for (int i2 = i2_begin; i2 < i2_end; ++i2) {
            const double w2 = grid.w2(i2);
            for (int i3 = 0; i3 < n3; ++i3) {
                const SignalPoint p = signal_at(grid.w3(i3), w2, t1_fs, table);
                const int k = i2 * n3 + i3;
                out.s_i[k] = p.s_i;
                out.s_ii[k] = p.s_ii;
                out.s_total[k] = p.s_i + p.s_ii;
            }
        }
    };
    if (nw == 1) {
        rows(0, n2);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n2 + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            const int b = w * chunk, e = std::min(n2, b + chunk);
            if (b >= e) break;
            pool.emplace_back(rows, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

SpectrumGrid spectrum(const SystemSpec& spec, const FrequencyGrid& grid, double t1_fs, int threads) {
    const PolaritonSystem sys = diagonalize_system(spec);
    return spectrum(transition_dipoles(sys, spec), grid, t1_fs, threads);
}

std::complex<double> time_signal(const TransitionTable& t, double t3_fs, double t2_fs, double t1_fs) {
    if (t3_fs < 0.0 || t2_fs < 0.0) fail(ErrorCode::Validate, "time_signal: t2, t3 must be >= 0");
    const int d1 = static_cast<int>(t.mu_eg.size());
    const int d2 = t.mu_fe.rows();
    const double tau1 = units::optical_time(t1_fs);
    const double tau2 = units::optical_time(t2_fs);
    const double tau3 = units::optical_time(t3_fs);
    const std::complex<double> im(0.0, 1.0);

    std::complex<double> val(0.0, 0.0);
    for (int f = 0; f < d2; ++f) {
        std::complex<double> p_sum(0.0, 0.0);
        std::complex<double> p_prop(0.0, 0.0);
        bool any = false;
        for (int e = 0; e < d1; ++e) {
            const double pe = t.mu_eg[e] * t.mu_fe(f, e);
            if (pe == 0.0) continue;
            any = true;
            const std::complex<double> phase =
                std::exp(im * t.omega_eg[e] * tau1 - t.gamma_eg[e] * tau1);
            p_sum += pe * phase;
            p_prop += pe * phase * std::exp((-im * t.omega_fe(f, e) - t.gamma_fe(f, e)) * tau3);
        }
        if (!any) continue;
        std::complex<double> q_sum(0.0, 0.0);
        std::complex<double> q_prop(0.0, 0.0);
        for (int ep = 0; ep < d1; ++ep) {
            const double qe = t.mu_eg[ep] * t.mu_fe(f, ep);
            if (qe == 0.0) continue;
            q_sum += qe;
            q_prop += qe * std::exp((-im * t.omega_eg[ep] - t.gamma_eg[ep]) * tau3);
        }
        const std::complex<double> c2 = std::exp((-im * t.omega_fg[f] - t.gamma_fg[f]) * tau2);
        // overall -1: each half-axis Fourier transform of exp(-i w0 tau - g tau)
        // gives i/(w - w0 + ig), so the two axes contribute i^2
        val -= c2 * (p_sum * q_prop - p_prop * q_sum);
    }
    return val;
}

std::vector<int> match_polariton_branches(const Eigen::MatrixXd& prev, const Eigen::MatrixXd& cur,
                                          const std::vector<int>& prev_map) {
    const int d = static_cast<int>(cur.cols());
    const Eigen::MatrixXd ov = (prev.transpose() * cur).cwiseAbs();
    std::vector<int> map(d, -1);
    std::vector<bool> used(d, false);
    // greedy: strongest overlaps first
    for (int pass = 0; pass < d; ++pass) {
        int bi = -1, bj = -1;
        double best = -1.0;
        for (int j = 0; j < d; ++j) {
            if (map[j] >= 0) continue;
            for (int i = 0; i < d; ++i) {
                if (used[i]) continue;
                if (ov(i, j) > best) {
                    best = ov(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        map[bj] = prev_map[bi];
        used[bi] = true;
    }
    return map;
}

SweepResult coupling_sweep(const SystemSpec& base, const std::vector<double>& scales,
                           const FrequencyGrid& grid, double t1_fs, int threads) {
    if (scales.empty()) fail(ErrorCode::Validate, "coupling_sweep: sweep list is empty");
    for (size_t k = 1; k < scales.size(); ++k)
        if (!(scales[k] >= scales[k - 1])) fail(ErrorCode::Validate, "coupling_sweep: sweep values must be monotone");

    SweepResult res;
    for (size_t k = 0; k < scales.size(); ++k) {
        SweepPoint pt;
        pt.scale = scales[k];
        SystemSpec spec = base;
        for (auto& g : spec.gt) g *= scales[k];
        pt.system = diagonalize_system(spec);
        pt.grid = spectrum(transition_dipoles(pt.system, spec), grid, t1_fs, threads);

        const int d1 = pt.system.e.basis.dim();
        const int d2 = pt.system.f.basis.dim();
        if (k == 0) {
            pt.branch_e.resize(d1);
            pt.branch_f.resize(d2);
            for (int i = 0; i < d1; ++i) pt.branch_e[i] = i;
            for (int i = 0; i < d2; ++i) pt.branch_f[i] = i;
        } else {
            const SweepPoint& prev = res.points.back();
            pt.branch_e = match_polariton_branches(prev.system.e.vectors, pt.system.e.vectors, prev.branch_e);
            pt.branch_f = match_polariton_branches(prev.system.f.vectors, pt.system.f.vectors, prev.branch_f);
        }
        res.points.push_back(std::move(pt));
    }
    return res;
}

} // namespace polardqc
