// Numerical check that the closed-form frequency-domain signal equals the
// double Fourier transform of the time-domain response: sample S(t3, t2) on
// an optical-time grid, transform with exp(i(w2 t2 + w3 t3)) kernels via
// demodulated FFTs, and compare against signal_at on the FFT bin frequencies.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <thread>
#include <vector>

#include "signal.hpp"
#include "units.hpp"

namespace polardqc {

namespace {

// time_signal with optical-time arguments (tau = 2 pi c t)
std::complex<double> time_signal_tau(const TransitionTable& t, double tau3, double tau2) {
    const double fs = 1.0 / units::rad_per_fs_per_cm1;
    return time_signal(t, tau3 * fs, tau2 * fs, 0.0);
}

struct PoleList {
    std::vector<double> w2, w3;        // positions
    std::vector<double> g2, g3;        // matching dephasings
};

PoleList contributing_poles(const TransitionTable& t) {
    PoleList p;
    const int d1 = static_cast<int>(t.mu_eg.size());
    const int d2 = t.mu_fe.rows();
    for (int f = 0; f < d2; ++f) {
        bool bright = false;
        for (int e = 0; e < d1; ++e) {
            if (t.mu_eg[e] * t.mu_fe(f, e) == 0.0) continue;
            bright = true;
            p.w3.push_back(t.omega_fe(f, e));
            p.g3.push_back(t.gamma_fe(f, e));
            p.w3.push_back(t.omega_eg[e]);
            p.g3.push_back(t.gamma_eg[e]);
        }
        if (bright) {
            p.w2.push_back(t.omega_fg[f]);
            p.g2.push_back(t.gamma_fg[f]);
        }
    }
    return p;
}

} // namespace

FourierCheck fourier_consistency(const TransitionTable& table, const FrequencyGrid& grid, int threads) {
    grid.validate();
    const double gmin = table.min_positive_gamma();
    if (gmin <= 0.0) fail(ErrorCode::Domain, "fourier_consistency: no positive dephasing, transform does not converge");

    const PoleList poles = contributing_poles(table);
    if (poles.w2.empty()) fail(ErrorCode::Domain, "fourier_consistency: signal is identically dark");
    const double gmax = table.max_gamma();

    const double w2c = 0.5 * (grid.w2_lo + grid.w2_hi);
    const double w3c = 0.5 * (grid.w3_lo + grid.w3_hi);
    double bw = 0.0;
    for (double w : poles.w2) bw = std::max(bw, std::abs(w - w2c));
    for (double w : poles.w3) bw = std::max(bw, std::abs(w - w3c));
    bw = std::max(bw, 0.5 * (grid.w2_hi - grid.w2_lo));
    bw = std::max(bw, 0.5 * (grid.w3_hi - grid.w3_lo));
    bw += 20.0 * gmax + 50.0;

    FourierCheck chk;
    chk.window = 10.0 / gmin;
    chk.dt = M_PI / (16.0 * bw); // 16x the Nyquist rate of the widest component
    const int nt = static_cast<int>(std::ceil(chk.window / chk.dt)) + 1;
    int nfft = 1;
    while (nfft < nt || 2.0 * M_PI / (chk.dt * nfft) > 1.0) nfft *= 2; // bins <= 1 cm^-1

    // sample the time response, rows = t3, cols = t2, trapezoid edge weights
    std::vector<std::complex<double>> st(static_cast<size_t>(nt) * nt);
    int nw = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nw = std::clamp(nw, 1, nt);
    auto fill_rows = [&](int a0, int a1) {
        for (int a = a0; a < a1; ++a)
            for (int b = 0; b < nt; ++b) {
                std::complex<double> v = time_signal_tau(table, a * chk.dt, b * chk.dt);
                if (a == 0) v *= 0.5;
                if (b == 0) v *= 0.5;
                st[static_cast<size_t>(a) * nt + b] = v;
            }
    };
    if (nw == 1) {
        fill_rows(0, nt);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (nt + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            const int b = w * chunk, e = std::min(nt, b + chunk);
            if (b < e) pool.emplace_back(fill_rows, b, e);
        }
        for (auto& th : pool) th.join();
    }

    // FFT bin frequencies around a center: bin k -> center + 2 pi k / (N dt)
    auto bin_freq = [&](int k) {
        const int kk = (k <= nfft / 2) ? k : k - nfft;
        return 2.0 * M_PI * kk / (chk.dt * nfft);
    };
    std::vector<int> keep2, keep3;
    std::vector<double> f2, f3;
    for (int k = 0; k < nfft; ++k) {
        const double o2 = w2c + bin_freq(k);
        if (o2 >= grid.w2_lo && o2 <= grid.w2_hi) {
            keep2.push_back(k);
            f2.push_back(o2);
        }
        const double o3 = w3c + bin_freq(k);
        if (o3 >= grid.w3_lo && o3 <= grid.w3_hi) {
            keep3.push_back(k);
            f3.push_back(o3);
        }
    }

    fftw_complex* buf = fftw_alloc_complex(nfft);
    fftw_plan plan = fftw_plan_dft_1d(nfft, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    auto run_fft = [&](const std::complex<double>* in, int n, double center,
                       const std::vector<int>& keep, std::complex<double>* out, int out_stride) {
        std::memset(buf, 0, sizeof(fftw_complex) * nfft);
        for (int n_i = 0; n_i < n; ++n_i) {
            const std::complex<double> ph = std::exp(std::complex<double>(0.0, center * n_i * chk.dt));
            const std::complex<double> v = in[n_i] * ph;
            buf[n_i][0] = v.real();
            buf[n_i][1] = v.imag();
        }
        fftw_execute(plan);
        for (size_t k = 0; k < keep.size(); ++k)
            out[k * out_stride] = chk.dt * std::complex<double>(buf[keep[k]][0], buf[keep[k]][1]);
    };

    // transform t2 -> w2 row by row
    std::vector<std::complex<double>> half(static_cast<size_t>(nt) * keep2.size());
    std::vector<std::complex<double>> rowbuf(nt);
    for (int a = 0; a < nt; ++a) {
        std::memcpy(rowbuf.data(), &st[static_cast<size_t>(a) * nt], sizeof(std::complex<double>) * nt);
        run_fft(rowbuf.data(), nt, w2c, keep2, &half[static_cast<size_t>(a) * keep2.size()], 1);
    }
    // transform t3 -> w3 column by column
    std::vector<std::complex<double>> full(keep3.size() * keep2.size());
    std::vector<std::complex<double>> colbuf(nt);
    for (size_t j = 0; j < keep2.size(); ++j) {
        for (int a = 0; a < nt; ++a) colbuf[a] = half[static_cast<size_t>(a) * keep2.size() + j];
        std::vector<std::complex<double>> out3(keep3.size());
        run_fft(colbuf.data(), nt, w3c, keep3, out3.data(), 1);
        for (size_t i = 0; i < keep3.size(); ++i) full[i * keep2.size() + j] = out3[i];
    }
    fftw_destroy_plan(plan);
    fftw_free(buf);

    // compare on bins farther than 3 gamma from every contributing pole
    chk.max_rel_err_far = 0.0;
    chk.n_far = 0;
    for (size_t i = 0; i < keep3.size(); ++i) {
        bool far3 = true;
        for (size_t p = 0; p < poles.w3.size() && far3; ++p)
            if (std::abs(f3[i] - poles.w3[p]) < 3.0 * poles.g3[p]) far3 = false;
        if (!far3) continue;
        for (size_t j = 0; j < keep2.size(); ++j) {
            bool far2 = true;
            for (size_t p = 0; p < poles.w2.size() && far2; ++p)
                if (std::abs(f2[j] - poles.w2[p]) < 3.0 * poles.g2[p]) far2 = false;
            if (!far2) continue;
            const SignalPoint ref = signal_at(f3[i], f2[j], 0.0, table);
            const std::complex<double> want = ref.total();
            const double den = std::abs(want);
            if (den == 0.0) continue;
            chk.max_rel_err_far =
                std::max(chk.max_rel_err_far, std::abs(full[i * keep2.size() + j] - want) / den);
            ++chk.n_far;
        }
    }
    return chk;
}

} // namespace polardqc
