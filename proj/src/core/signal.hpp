#ifndef POLARDQC_SIGNAL_HPP
#define POLARDQC_SIGNAL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "polariton.hpp"
#include "system.hpp"

namespace polardqc {

struct FrequencyGrid {
    double w2_lo = 2950.0, w2_hi = 3450.0, w2_step = 1.0; // double-quantum axis
    double w3_lo = 1400.0, w3_hi = 1850.0, w3_step = 1.0; // detection axis

    int n2() const { return static_cast<int>(std::floor((w2_hi - w2_lo) / w2_step + 0.5)) + 1; }
    int n3() const { return static_cast<int>(std::floor((w3_hi - w3_lo) / w3_step + 0.5)) + 1; }
    double w2(int i) const { return w2_lo + i * w2_step; }
    double w3(int j) const { return w3_lo + j * w3_step; }
    void validate() const;
};

struct SignalPoint {
    std::complex<double> s_i{0.0, 0.0};
    std::complex<double> s_ii{0.0, 0.0};
    std::complex<double> total() const { return s_i + s_ii; }
};

// Frequency-domain double-quantum-coherence response at one grid point.
// Pathway i ends in the e'-g coherence, pathway ii in the f-e coherence and
// enters with the opposite sign; both share the two-quantum f-g resonance on
// the w2 axis and the dipole product mu_eg(e) mu_fe(f,e) mu_eg(e') mu_fe(f,e').
// A nonzero t1 multiplies each e-term by exp(i omega_eg tau - gamma_eg tau).
// Terms whose dipole product vanishes are skipped outright; a vanishing
// gamma on a contributing coherence is a domain error (pole on the real axis).
SignalPoint signal_at(double w3, double w2, double t1_fs, const TransitionTable& table);

enum class Component { PathwayI, PathwayII, Total };

struct SpectrumGrid {
    FrequencyGrid grid;
    double t1_fs = 0.0;
    std::uint64_t spec_hash = 0;
    // row-major, w2 outer / w3 inner
    std::vector<std::complex<double>> s_i, s_ii, s_total;

    int index(int i2, int i3) const { return i2 * grid.n3() + i3; }
    const std::complex<double>& at(Component c, int i2, int i3) const {
        const auto& v = (c == Component::PathwayI) ? s_i : (c == Component::PathwayII ? s_ii : s_total);
        return v[index(i2, i3)];
    }
    double max_abs(Component c) const;
};

// Dense evaluation of signal_at over the grid. Points are independent, so the
// rows are split across `threads` workers (0 = hardware concurrency) with a
// deterministic merge: output is identical for any worker count.
SpectrumGrid spectrum(const SystemSpec& spec, const FrequencyGrid& grid, double t1_fs, int threads = 0);
SpectrumGrid spectrum(const TransitionTable& table, const FrequencyGrid& grid, double t1_fs, int threads = 0);

// Time-domain response: per pathway, the product of the coherence
// propagators exp[(-i omega_ab - gamma_ab) tau] active during t1 (e-g),
// t2 (f-g) and t3 (e'-g resp. f-e), with the same dipole products and
// relative sign as signal_at. Normalized so that the double Fourier
// transform over t2, t3 with kernel exp(i(w2 t2 + w3 t3)) reproduces
// signal_at (the two half-axis transforms contribute a factor i each).
std::complex<double> time_signal(const TransitionTable& table, double t3_fs, double t2_fs, double t1_fs);

// One spectrum per sweep value s, with gt_i = s * base_i. Polariton branches
// are linked across consecutive points by maximal eigenvector overlap.
struct SweepPoint {
    double scale = 0.0;
    SpectrumGrid grid;
    PolaritonSystem system;
    // branch_e[k] / branch_f[k]: index of this point's state k in the first
    // sweep point's ordering (identity at the first point)
    std::vector<int> branch_e, branch_f;
};
struct SweepResult {
    std::vector<SweepPoint> points;
};
SweepResult coupling_sweep(const SystemSpec& base, const std::vector<double>& scales,
                           const FrequencyGrid& grid, double t1_fs, int threads = 0);

// Greedy maximal-|overlap| matching of eigenvector columns between two sweep
// points; prev_map carries the accumulated mapping back to the first point.
std::vector<int> match_polariton_branches(const Eigen::MatrixXd& prev, const Eigen::MatrixXd& cur,
                                          const std::vector<int>& prev_map);

// FFT cross-check of the frequency-domain engine against the time-domain
// response (see fourier.cpp).
struct FourierCheck {
    double max_rel_err_far = 0.0; // over bins farther than 3*gamma from every pole
    int n_far = 0;
    double window = 0.0; // optical-time window actually used
    double dt = 0.0;     // optical-time sampling step
};
FourierCheck fourier_consistency(const TransitionTable& table, const FrequencyGrid& grid, int threads = 0);

} // namespace polardqc

#endif
