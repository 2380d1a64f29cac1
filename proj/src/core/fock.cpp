#include "fock.hpp"

#include <algorithm>
#include <cmath>

namespace polardqc {

int ManifoldBasis::index_of(const BasisState& s) const {
    for (int i = 0; i < dim(); ++i)
        if (states[i] == s) return i;
    return -1;
}

ManifoldBasis enumerate_manifold(int m, int n) {
    if (m < 1) fail(ErrorCode::Validate, "enumerate_manifold: need m >= 1");
    if (n < 0 || n > 2)
        fail(ErrorCode::Validate,
             "enumerate_manifold: n = " + std::to_string(n) +
                 " unsupported; the model involves exactly the 0/1/2-excitation manifolds");

    ManifoldBasis basis;
    basis.excitation = n;
    basis.slots = m + 1;

    // Distribute n quanta over the slots, depth-first.
    BasisState cur(basis.slots, 0);
    auto place = [&](auto&& self, int slot, int left) -> void {
        if (slot == basis.slots - 1) {
            cur[slot] = left;
            basis.states.push_back(cur);
            return;
        }
        for (int k = left; k >= 0; --k) {
            cur[slot] = k;
            self(self, slot + 1, left - k);
        }
        cur[slot] = 0;
    };
    place(place, 0, n);

    std::sort(basis.states.begin(), basis.states.end(),
              [](const BasisState& a, const BasisState& b) { return a > b; });
    return basis;
}

double ladder_element(Ladder kind, int slot, const BasisState& from, const BasisState& to) {
    const int slots = static_cast<int>(from.size());
    if (slot < 0 || slot >= slots || static_cast<int>(to.size()) != slots)
        fail(ErrorCode::Validate, "ladder_element: bad slot or mismatched states");
    const int step = (kind == Ladder::Raise) ? 1 : -1;
    for (int s = 0; s < slots; ++s) {
        const int want = from[s] + (s == slot ? step : 0);
        if (to[s] != want) return 0.0;
    }
    if (kind == Ladder::Raise) return std::sqrt(static_cast<double>(from[slot] + 1));
    return from[slot] > 0 ? std::sqrt(static_cast<double>(from[slot])) : 0.0;
}

Eigen::MatrixXd lowering_matrix(int slot, const ManifoldBasis& upper, const ManifoldBasis& lower) {
    if (lower.excitation != upper.excitation - 1)
        fail(ErrorCode::Validate, "lowering_matrix: manifolds are not adjacent");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(lower.dim(), upper.dim());
    for (int c = 0; c < upper.dim(); ++c) {
        const BasisState& s = upper.states[c];
        if (s[slot] == 0) continue;
        BasisState t = s;
        t[slot] -= 1;
        const int r = lower.index_of(t);
        if (r >= 0) out(r, c) = std::sqrt(static_cast<double>(s[slot]));
    }
    return out;
}

} // namespace polardqc
