#ifndef POLARDQC_FOCK_HPP
#define POLARDQC_FOCK_HPP

#include <Eigen/Dense>
#include <vector>

#include "error.hpp"

namespace polardqc {

// Occupation-number state over m+1 boson slots. Slot 0 is the cavity photon
// (operator a), slots 1..m are the vibrational modes (operators b_i).
using BasisState = std::vector<int>;

// All states with total excitation n, in canonical order: lexicographically
// decreasing occupation vectors, so the highest photon number comes first.
// The ordering is deterministic and fixes every matrix layout downstream.
struct ManifoldBasis {
    int excitation = 0;
    int slots = 0; // m + 1
    std::vector<BasisState> states;

    int dim() const { return static_cast<int>(states.size()); }
    // -1 when the state does not belong to this manifold
    int index_of(const BasisState& s) const;
};

// n is capped at 2: the Hamiltonian conserves total excitation, and the
// double-quantum signal involves exactly the 0/1/2 manifolds, so nothing
// beyond n=2 can contribute. Requests above the cap are rejected.
ManifoldBasis enumerate_manifold(int m, int n);

enum class Ladder { Lower, Raise };

// <to| op_slot |from> for a single boson lowering/raising operator:
// sqrt(n) resp. sqrt(n+1) when the two states differ only in that slot,
// zero otherwise.
double ladder_element(Ladder kind, int slot, const BasisState& from, const BasisState& to);

// Matrix of b_slot between adjacent manifolds: rows index `lower` states,
// columns index `upper` states.
Eigen::MatrixXd lowering_matrix(int slot, const ManifoldBasis& upper, const ManifoldBasis& lower);

} // namespace polardqc

#endif
