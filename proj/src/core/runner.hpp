#ifndef POLARDQC_RUNNER_HPP
#define POLARDQC_RUNNER_HPP

#include <string>
#include <vector>

#include "config.hpp"

namespace polardqc {

// One sweep point produces p###_spectrum.csv, p###_meta.cfg, p###_peaks.csv.
// The config is validated and every sweep point computed before the first
// byte is written, so a failing run leaves no partial files behind.
struct RunOutputs {
    std::vector<std::string> files; // paths actually written, in order
};
RunOutputs run_spectrum_files(const RunConfig& cfg, const std::string& outdir, int threads = 0);

// p###_levels.csv, p###_transitions.csv, p###_anharmonicity.csv per sweep point.
RunOutputs run_levels_files(const RunConfig& cfg, const std::string& outdir);

struct SelfcheckOptions {
    bool inject_kappa_sign_bug = false; // mutation fixture: must make the
                                        // effective-coupling check fail
    int threads = 0;
};
struct SelfcheckItem {
    std::string name;
    bool pass = false;
    double residual = 0.0; // measured worst-case deviation
    std::string note;
};
struct SelfcheckResult {
    std::vector<SelfcheckItem> items;
    bool all_pass() const;
};

// Release-gate invariants: block hermiticity, excitation conservation,
// vacuum Rabi splitting, the harmonic null of the two-quantum signal,
// frequency/time-domain Fourier consistency, effective-coupling algebra.
SelfcheckResult run_selfcheck(const SelfcheckOptions& opts = {});
std::string selfcheck_report(const SelfcheckResult& res);

} // namespace polardqc

#endif
