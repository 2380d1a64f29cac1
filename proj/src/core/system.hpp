#ifndef POLARDQC_SYSTEM_HPP
#define POLARDQC_SYSTEM_HPP

#include <Eigen/Dense>
#include <vector>

#include "error.hpp"

namespace polardqc {

// One local vibrational mode. cos_align is the projection of the mode dipole
// on the cavity field vector e_c (1 = parallel).
struct VibrationalMode {
    double omega_cm1 = 0.0;
    double gamma_cm1 = 0.0;
    double mu_debye = 0.0;
    double cos_align = 1.0;
};

struct CavitySpec {
    double omega0_cm1 = 0.0;   // cut-off (theta = 0) energy
    double theta_deg = 0.0;    // incidence angle
    double n_eff = 1.0;        // effective intra-cavity refractive index
    double kappa_cm1 = 0.0;    // cavity decay rate
    double n_molecules = 1.0;  // N, may be very large
};

// How coherence dephasings gamma_ab are assigned.
//   Composition: state linewidth = occupation-weighted mix of kappa and the
//                mode gammas; gamma_ab = gamma_a + gamma_b (gamma_g = 0).
//   Flat:        every gamma_ab takes the single override value.
enum class DephasingModel { Composition, Flat };

struct SystemSpec {
    std::vector<VibrationalMode> modes;
    CavitySpec cavity;
    Eigen::MatrixXd J;      // m x m scalar couplings, symmetric, zero diagonal
    Eigen::MatrixXd Delta;  // m x m anharmonicities, symmetric
    std::vector<double> gt; // effective cavity couplings, one per mode

    DephasingModel dephasing = DephasingModel::Composition;
    double gamma_override = 0.0;        // used when dephasing == Flat
    bool cross_anharmonicity = true;    // include Delta_ij (i != j) terms
    double cavity_leak_dipole = 0.0;    // optional a+a^dag dipole amplitude

    int mode_count() const { return static_cast<int>(modes.size()); }

    // Throws Error(Validate) naming the offending field.
    void validate() const;
};

// omega_c(theta) = omega0 (1 - sin^2(theta)/n_eff^2)^(-1/2).
// Throws Error(Domain) in the evanescent regime sin^2/n_eff^2 >= 1.
double cavity_frequency(const CavitySpec& cavity);

// Single-molecule radiation-matter coupling from cavity geometry:
// g = sqrt(N) (mu.e_c) sqrt(hbar*omega_c / (2 eps0 V)), V = (lambda/n_eff)^3,
// lambda = 1/omega_c. Evaluated in SI and converted back to cm^-1.
double coupling_from_geometry(const VibrationalMode& mode, const CavitySpec& cavity);

// gt = sqrt(N g^2 - (kappa - gamma)^2 / 4).
// Throws Error(WeakCoupling) when the radicand is negative.
double effective_coupling(double g_cm1, double n_molecules, double kappa_cm1, double gamma_cm1);

// delta = omega_i - omega_c(theta)
double detuning(const VibrationalMode& mode, const CavitySpec& cavity);

} // namespace polardqc

#endif
