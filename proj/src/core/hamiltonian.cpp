#include "hamiltonian.hpp"

#include <cmath>
#include <ostream>

namespace polardqc {

HermitianBlock build_block(const SystemSpec& spec, int n) {
    spec.validate();
    const int m = spec.mode_count();

    HermitianBlock block;
    block.excitation = n;
    block.basis = enumerate_manifold(m, n);
    const auto& basis = block.basis;
    const int d = basis.dim();
    block.matrix = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd& H = block.matrix;

    const double wc = cavity_frequency(spec.cavity);

    for (int c = 0; c < d; ++c) {
        const BasisState& s = basis.states[c];

        // number-diagonal terms
        double diag = s[0] * wc;
        for (int i = 0; i < m; ++i) diag += s[i + 1] * spec.modes[i].omega_cm1;
        for (int i = 0; i < m; ++i) {
            const int ni = s[i + 1];
            diag -= 0.5 * spec.Delta(i, i) * ni * (ni - 1);
            if (spec.cross_anharmonicity) {
                for (int j = 0; j < m; ++j)
                    if (j != i) diag -= 0.5 * spec.Delta(i, j) * ni * s[j + 1];
            }
        }
        H(c, c) += diag;

        // J_ij b_i^dag b_j, i != j
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i == j || spec.J(i, j) == 0.0 || s[j + 1] == 0) continue;
                BasisState t = s;
                t[j + 1] -= 1;
                t[i + 1] += 1;
                const int r = basis.index_of(t);
                H(r, c) += spec.J(i, j) * std::sqrt(double(s[j + 1])) * std::sqrt(double(t[i + 1]));
            }
        }

        // gt_i (a^dag b_i + b_i^dag a)
        for (int i = 0; i < m; ++i) {
            if (spec.gt[i] == 0.0) continue;
            if (s[i + 1] > 0) { // a^dag b_i
                BasisState t = s;
                t[i + 1] -= 1;
                t[0] += 1;
                const int r = basis.index_of(t);
                H(r, c) += spec.gt[i] * std::sqrt(double(s[i + 1])) * std::sqrt(double(t[0]));
            }
            if (s[0] > 0) { // b_i^dag a
                BasisState t = s;
                t[0] -= 1;
                t[i + 1] += 1;
                const int r = basis.index_of(t);
                H(r, c) += spec.gt[i] * std::sqrt(double(s[0])) * std::sqrt(double(t[i + 1]));
            }
        }
    }
    return block;
}

namespace {

// Apply one annihilation (step = -1) or creation (step = +1) to an
// occupation vector, multiplying the boson amplitude into amp.
bool apply_ladder(BasisState& s, int slot, int step, double& amp) {
    if (step < 0) {
        if (s[slot] == 0) return false;
        amp *= std::sqrt(double(s[slot]));
        s[slot] -= 1;
    } else {
        amp *= std::sqrt(double(s[slot] + 1));
        s[slot] += 1;
    }
    return true;
}

} // namespace

ExcitationConservation conserves_excitation(const SystemSpec& spec) {
    spec.validate();
    const int m = spec.mode_count();
    const double wc = cavity_frequency(spec.cavity);

    // Full space: manifolds 0,1,2 concatenated.
    std::vector<BasisState> states;
    std::vector<int> total; // total excitation per state
    for (int n = 0; n <= 2; ++n) {
        const ManifoldBasis b = enumerate_manifold(m, n);
        for (const auto& s : b.states) {
            states.push_back(s);
            total.push_back(n);
        }
    }
    const int D = static_cast<int>(states.size());
    auto index_of = [&](const BasisState& s) {
        for (int i = 0; i < D; ++i)
            if (states[i] == s) return i;
        return -1;
    };

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(D, D);
    // Each Hamiltonian term as an operator string, applied right-to-left to
    // every column state with generic ladder amplitudes. No manifold logic.
    struct Term {
        double coeff;
        std::vector<std::pair<int, int>> ops; // (slot, +1/-1), rightmost first
    };
    std::vector<Term> terms;
    terms.push_back({wc, {{0, -1}, {0, +1}}}); // a^dag a
    for (int i = 0; i < m; ++i) terms.push_back({spec.modes[i].omega_cm1, {{i + 1, -1}, {i + 1, +1}}});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && spec.J(i, j) != 0.0) terms.push_back({spec.J(i, j), {{j + 1, -1}, {i + 1, +1}}});
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (!spec.cross_anharmonicity && i != j) continue;
            if (spec.Delta(i, j) != 0.0)
                terms.push_back({-0.5 * spec.Delta(i, j), {{j + 1, -1}, {i + 1, -1}, {j + 1, +1}, {i + 1, +1}}});
        }
    for (int i = 0; i < m; ++i) {
        if (spec.gt[i] == 0.0) continue;
        terms.push_back({spec.gt[i], {{i + 1, -1}, {0, +1}}});
        terms.push_back({spec.gt[i], {{0, -1}, {i + 1, +1}}});
    }

    for (int c = 0; c < D; ++c) {
        for (const auto& term : terms) {
            BasisState s = states[c];
            double amp = term.coeff;
            bool alive = true;
            for (const auto& [slot, step] : term.ops)
                if (!apply_ladder(s, slot, step, amp)) {
                    alive = false;
                    break;
                }
            if (!alive) continue;
            const int r = index_of(s);
            if (r < 0) continue; // escaped the <=2 space; cannot happen for number-conserving terms
            H(r, c) += amp;
        }
    }

    ExcitationConservation res;
    res.max_off_block = 0.0;
    for (int r = 0; r < D; ++r)
        for (int c = 0; c < D; ++c)
            if (total[r] != total[c]) res.max_off_block = std::max(res.max_off_block, std::abs(H(r, c)));
    res.conserved = (res.max_off_block == 0.0);
    return res;
}

void write_block_csv(const HermitianBlock& block, std::ostream& out) {
    auto label = [](const BasisState& s) {
        std::string t;
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) t += ';';
            t += std::to_string(s[i]);
        }
        return t;
    };
    out << "basis";
    for (const auto& s : block.basis.states) out << ',' << label(s);
    out << '\n';
    for (int r = 0; r < block.basis.dim(); ++r) {
        out << label(block.basis.states[r]);
        for (int c = 0; c < block.basis.dim(); ++c) out << ',' << block.matrix(r, c);
        out << '\n';
    }
}

} // namespace polardqc
