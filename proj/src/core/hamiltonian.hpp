#ifndef POLARDQC_HAMILTONIAN_HPP
#define POLARDQC_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <iosfwd>

#include "fock.hpp"
#include "system.hpp"

namespace polardqc {

struct HermitianBlock {
    int excitation = 0;
    ManifoldBasis basis;
    Eigen::MatrixXd matrix; // real symmetric, cm^-1, canonical basis order
};

// Assembles the n-excitation block:
//   omega_c a^dag a + sum_i omega_i b_i^dag b_i + sum_{i!=j} J_ij b_i^dag b_j
//   - sum_ij Delta_ij/2 b_i^dag b_j^dag b_i b_j
//   + sum_i gt_i (a^dag b_i + b_i^dag a)
// The quartic term is number-diagonal: -Delta_ii n_i(n_i-1)/2 for i = j and
// -Delta_ij n_i n_j for i != j (both orderings of the pair sum), putting the
// local overtone at 2 omega_i - Delta_ii and the combination band at
// omega_i + omega_j - Delta_ij. Off-diagonals carry boson amplitudes, so the
// matrix is symmetric by construction (each entry is written exactly once).
HermitianBlock build_block(const SystemSpec& spec, int n);

// Diagnostic: assemble the full space of all states with total excitation
// <= 2 and apply every Hamiltonian term without any manifold restriction;
// every term balances creations against annihilations, so the inter-manifold
// blocks must vanish identically. Also an independent cross-check of
// build_block, since the assembly here shares no code path with it.
struct ExcitationConservation {
    bool conserved = false;
    double max_off_block = 0.0;
};
ExcitationConservation conserves_excitation(const SystemSpec& spec);

// Debug dump with canonical basis states as row/column labels.
void write_block_csv(const HermitianBlock& block, std::ostream& out);

} // namespace polardqc

#endif
