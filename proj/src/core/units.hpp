#ifndef POLARDQC_UNITS_HPP
#define POLARDQC_UNITS_HPP

// All frequencies, energies, couplings and linewidths are carried in cm^-1
// internally. SI enters only in the geometry-derived coupling, through the
// constants below, and leaves again immediately.

namespace polardqc::units {

// CODATA 2018
inline constexpr double planck_J_s = 6.62607015e-34;
inline constexpr double light_m_s = 2.99792458e8;
inline constexpr double epsilon0_F_m = 8.8541878128e-12;

// 1 Debye = 1e-21/c C m
inline constexpr double debye_C_m = 1e-21 / light_m_s;

// E[J] = h c * (100 * nu[cm^-1])
inline constexpr double joule_per_cm1 = planck_J_s * light_m_s * 100.0;

// Phase accumulated per fs by a 1 cm^-1 coherence: 2*pi*c with c in cm/fs.
// Multiplying a delay in fs by this gives the "optical time" tau such that
// exp(-i*omega*tau - gamma*tau) uses omega, gamma directly in cm^-1.
inline constexpr double rad_per_fs_per_cm1 = 2.0 * 3.14159265358979323846 * 2.99792458e-5;

inline constexpr double optical_time(double t_fs) { return rad_per_fs_per_cm1 * t_fs; }

} // namespace polardqc::units

#endif
