#ifndef POLARDQC_POLARITON_HPP
#define POLARDQC_POLARITON_HPP

#include <Eigen/Dense>
#include <vector>

#include "hamiltonian.hpp"
#include "system.hpp"

namespace polardqc {

struct PolaritonManifold {
    char label = 'g'; // 'g', 'e' or 'f'
    ManifoldBasis basis;
    Eigen::VectorXd energies;   // ascending, cm^-1
    Eigen::MatrixXd vectors;    // orthonormal columns, canonical Fock order
    Eigen::VectorXd linewidths; // per-state gamma_k, cm^-1
};

struct PolaritonSystem {
    PolaritonManifold g, e, f;
    const PolaritonManifold& manifold(int n) const { return n == 0 ? g : (n == 1 ? e : f); }
};

// Diagonalizes the three Hamiltonian blocks. Eigenvector gauge: within each
// numerically degenerate cluster the subspace is re-spanned by projecting the
// canonical Fock vectors onto it (greedily, in canonical order), so that
// degenerate states align with Fock states instead of an arbitrary solver
// rotation; then every column's largest-magnitude component is made positive.
// This keeps dipole signs reproducible across runs and across g-sweeps.
PolaritonSystem diagonalize_system(const SystemSpec& spec);

// Occupation-composition linewidths: gamma_k = sum_slots <n_slot>_k * gamma_slot
// with gamma_slot = kappa for the cavity slot and gamma_i for mode i.
Eigen::VectorXd state_linewidths(const PolaritonManifold& manifold, const SystemSpec& spec);

// Dipole products and coherence bookkeeping entering the response function.
struct TransitionTable {
    Eigen::VectorXd mu_eg;    // d1, Debye
    Eigen::MatrixXd mu_fe;    // d2 x d1, Debye
    Eigen::VectorXd omega_eg; // d1, cm^-1
    Eigen::VectorXd omega_fg; // d2
    Eigen::MatrixXd omega_fe; // d2 x d1
    Eigen::VectorXd gamma_eg; // coherence dephasings, cm^-1
    Eigen::VectorXd gamma_fg;
    Eigen::MatrixXd gamma_fe;

    double max_gamma() const;
    double min_positive_gamma() const; // over coherences only; 0 if none set
};

// External pulses couple to the molecular dipoles only,
// V = sum_i mu_i cos_i (b_i + b_i^dag), unless cavity_leak_dipole adds an
// a + a^dag amplitude. Coherence dephasings follow spec.dephasing.
TransitionTable transition_dipoles(const PolaritonSystem& system, const SystemSpec& spec);

// Printed single-mode closed form for the polariton-basis anharmonicity,
// V~_11 = 16 Delta |gt^4 / (delta^2 - 16 gt^2)^2|. Diagnostic only; the
// signal never consumes it. Throws Error(Domain) at the delta^2 = 16 gt^2 pole.
double polariton_anharmonicity_formula(const SystemSpec& spec, int i, int j);

// Generic |X|^2 form V~_ij = (Delta_ij/2) |X_i|^2 |X_j|^2 with explicit
// mixing weights.
double polariton_anharmonicity_from_weights(const SystemSpec& spec, int i, int j, double xi2, double xj2);

// Operational anharmonicity read off the spectra: for each f-state, the shift
// S = Omega_eg + Omega_e'g - Omega_fg against the (e, e') pair whose
// symmetrized two-quantum product has the largest overlap with the f-state.
struct AnharmonicShift {
    int f = 0;
    int e_a = 0, e_b = 0; // dominant pair, e_a <= e_b
    double shift_cm1 = 0.0;
    double overlap = 0.0;
};
std::vector<AnharmonicShift> polariton_anharmonicity_numeric(const PolaritonSystem& system);

} // namespace polardqc

#endif
