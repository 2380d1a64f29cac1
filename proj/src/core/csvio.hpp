#ifndef POLARDQC_CSVIO_HPP
#define POLARDQC_CSVIO_HPP

#include <string>
#include <vector>

#include "peaks.hpp"
#include "polariton.hpp"
#include "signal.hpp"

namespace polardqc {

// Data files use a fixed 12-significant-digit format so identical runs are
// byte-identical; config/metadata use the shortest round-trip representation.
std::string fmt12(double v);
std::string fmt_exact(double v);

void write_text_file(const std::string& path, const std::string& content); // throws Io

// columns: w2,w3,re_si,im_si,re_sii,im_sii,re_s,im_s (w2-major row order)
std::string grid_csv(const SpectrumGrid& grid);

// columns: w3,w2,height,label,residual
std::string peaks_csv(const std::vector<Peak>& peaks);

// manifold,state,energy_cm1,gamma_cm1 followed by branch metadata column
std::string levels_csv(const PolaritonSystem& sys, const std::vector<int>& branch_e,
                       const std::vector<int>& branch_f);

// type,upper,lower,omega_cm1,gamma_cm1,mu_debye
std::string transitions_csv(const TransitionTable& table);

// f,pair,shift_cm1,overlap plus the closed-form diagnostics when available
std::string anharmonicity_csv(const PolaritonSystem& sys, const SystemSpec& spec);

} // namespace polardqc

#endif
