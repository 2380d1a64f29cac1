#include "polariton.hpp"

#include <cmath>

namespace polardqc {

namespace {

// Re-span each numerically degenerate eigenvalue cluster with the projections
// of the canonical Fock vectors, taken greedily in canonical order. Any
// orthonormal set spanning the cluster is a valid eigenbasis; this particular
// one is solver-independent.
void fix_degenerate_gauge(Eigen::VectorXd& energies, Eigen::MatrixXd& vectors) {
    const int d = static_cast<int>(energies.size());
    const double scale = std::max(1.0, energies.cwiseAbs().maxCoeff());
    const double tol = 1e-9 * scale;

    int start = 0;
    while (start < d) {
        int stop = start + 1;
        while (stop < d && energies[stop] - energies[stop - 1] <= tol) ++stop;
        const int k = stop - start;
        if (k > 1) {
            const Eigen::MatrixXd sub = vectors.middleCols(start, k);
            Eigen::MatrixXd chosen(d, k);
            int found = 0;
            for (int r = 0; r < d && found < k; ++r) {
                // project e_r into the cluster subspace
                Eigen::VectorXd v = sub * sub.transpose().col(r);
                for (int u = 0; u < found; ++u) v -= chosen.col(u).dot(v) * chosen.col(u);
                const double nrm = v.norm();
                if (nrm > 1e-8) chosen.col(found++) = v / nrm;
            }
            if (found == k) vectors.middleCols(start, k) = chosen;
        }
        start = stop;
    }

    // sign convention: largest-magnitude component positive
    for (int c = 0; c < d; ++c) {
        int arg = 0;
        double best = -1.0;
        for (int r = 0; r < d; ++r) {
            const double a = std::abs(vectors(r, c));
            if (a > best) {
                best = a;
                arg = r;
            }
        }
        if (vectors(arg, c) < 0.0) vectors.col(c) = -vectors.col(c);
    }
}

PolaritonManifold diagonalize_block(const SystemSpec& spec, int n, char label) {
    HermitianBlock block = build_block(spec, n);
    PolaritonManifold man;
    man.label = label;
    man.basis = std::move(block.basis);

    if (block.matrix.rows() == 1) {
        man.energies = block.matrix.diagonal();
        man.vectors = Eigen::MatrixXd::Identity(1, 1);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.matrix);
        if (solver.info() != Eigen::Success)
            fail(ErrorCode::Internal, "eigensolver failed on the n=" + std::to_string(n) + " block");
        man.energies = solver.eigenvalues();
        man.vectors = solver.eigenvectors();
        fix_degenerate_gauge(man.energies, man.vectors);
    }
    man.linewidths = state_linewidths(man, spec);
    return man;
}

} // namespace

PolaritonSystem diagonalize_system(const SystemSpec& spec) {
    spec.validate();
    PolaritonSystem sys;
    sys.g = diagonalize_block(spec, 0, 'g');
    sys.e = diagonalize_block(spec, 1, 'e');
    sys.f = diagonalize_block(spec, 2, 'f');
    return sys;
}

Eigen::VectorXd state_linewidths(const PolaritonManifold& man, const SystemSpec& spec) {
    const int d = man.basis.dim();
    const int slots = man.basis.slots;
    Eigen::VectorXd slot_gamma(slots);
    slot_gamma[0] = spec.cavity.kappa_cm1;
    for (int i = 1; i < slots; ++i) slot_gamma[i] = spec.modes[i - 1].gamma_cm1;

    Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
    for (int k = 0; k < d; ++k) {
        double g = 0.0;
        for (int b = 0; b < d; ++b) {
            const double w = man.vectors(b, k) * man.vectors(b, k);
            for (int s = 0; s < slots; ++s) g += w * man.basis.states[b][s] * slot_gamma[s];
        }
        out[k] = g;
    }
    return out;
}

double TransitionTable::max_gamma() const {
    double m = 0.0;
    m = std::max(m, gamma_eg.size() ? gamma_eg.maxCoeff() : 0.0);
    m = std::max(m, gamma_fg.size() ? gamma_fg.maxCoeff() : 0.0);
    m = std::max(m, gamma_fe.size() ? gamma_fe.maxCoeff() : 0.0);
    return m;
}

double TransitionTable::min_positive_gamma() const {
    double m = -1.0;
    auto acc = [&](double v) {
        if (v > 0.0 && (m < 0.0 || v < m)) m = v;
    };
    for (int i = 0; i < gamma_eg.size(); ++i) acc(gamma_eg[i]);
    for (int i = 0; i < gamma_fg.size(); ++i) acc(gamma_fg[i]);
    for (int f = 0; f < gamma_fe.rows(); ++f)
        for (int e = 0; e < gamma_fe.cols(); ++e) acc(gamma_fe(f, e));
    return m < 0.0 ? 0.0 : m;
}

TransitionTable transition_dipoles(const PolaritonSystem& sys, const SystemSpec& spec) {
    const int m = spec.mode_count();
    const int d1 = sys.e.basis.dim();
    const int d2 = sys.f.basis.dim();

    // Fock-basis dipole blocks V_10 and V_21 from the raising parts; the
    // lowering parts connect the other way and enter through the transpose.
    Eigen::MatrixXd v10 = Eigen::MatrixXd::Zero(d1, 1);
    Eigen::MatrixXd v21 = Eigen::MatrixXd::Zero(d2, d1);
    for (int i = 0; i < m; ++i) {
        const double a = spec.modes[i].mu_debye * spec.modes[i].cos_align;
        if (a == 0.0) continue;
        v10 += a * lowering_matrix(i + 1, sys.e.basis, sys.g.basis).transpose();
        v21 += a * lowering_matrix(i + 1, sys.f.basis, sys.e.basis).transpose();
    }
    if (spec.cavity_leak_dipole != 0.0) {
        v10 += spec.cavity_leak_dipole * lowering_matrix(0, sys.e.basis, sys.g.basis).transpose();
        v21 += spec.cavity_leak_dipole * lowering_matrix(0, sys.f.basis, sys.e.basis).transpose();
    }

    TransitionTable t;
    t.mu_eg = (sys.e.vectors.transpose() * v10).col(0);
    t.mu_fe = sys.f.vectors.transpose() * v21 * sys.e.vectors;

    t.omega_eg = sys.e.energies;
    t.omega_fg = sys.f.energies;
    t.omega_fe.resize(d2, d1);
    for (int f = 0; f < d2; ++f)
        for (int e = 0; e < d1; ++e) t.omega_fe(f, e) = sys.f.energies[f] - sys.e.energies[e];

    if (spec.dephasing == DephasingModel::Flat) {
        t.gamma_eg = Eigen::VectorXd::Constant(d1, spec.gamma_override);
        t.gamma_fg = Eigen::VectorXd::Constant(d2, spec.gamma_override);
        t.gamma_fe = Eigen::MatrixXd::Constant(d2, d1, spec.gamma_override);
    } else {
        // gamma_ab = gamma_a + gamma_b with gamma_g = 0
        t.gamma_eg = sys.e.linewidths;
        t.gamma_fg = sys.f.linewidths;
        t.gamma_fe.resize(d2, d1);
        for (int f = 0; f < d2; ++f)
            for (int e = 0; e < d1; ++e) t.gamma_fe(f, e) = sys.f.linewidths[f] + sys.e.linewidths[e];
    }
    return t;
}

double polariton_anharmonicity_formula(const SystemSpec& spec, int i, int j) {
    spec.validate();
    if (i != 0 || j != 0 || spec.mode_count() != 1)
        fail(ErrorCode::Validate,
             "the printed closed form covers the single-mode V~_11 only; "
             "use polariton_anharmonicity_from_weights for the generic case");
    const double delta = detuning(spec.modes[0], spec.cavity);
    const double gt = spec.gt[0];
    const double den = delta * delta - 16.0 * gt * gt;
    if (den == 0.0)
        fail(ErrorCode::Domain, "anharmonicity formula pole: delta^2 = 16 gt^2");
    const double g2 = gt * gt;
    return 16.0 * spec.Delta(0, 0) * std::abs(g2 * g2 / (den * den));
}

double polariton_anharmonicity_from_weights(const SystemSpec& spec, int i, int j, double xi2, double xj2) {
    return 0.5 * spec.Delta(i, j) * std::abs(xi2) * std::abs(xj2);
}

std::vector<AnharmonicShift> polariton_anharmonicity_numeric(const PolaritonSystem& sys) {
    const int d1 = sys.e.basis.dim();
    const int d2 = sys.f.basis.dim();
    const int slots = sys.e.basis.slots;

    // One-quantum eigenvectors as slot-amplitude vectors.
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(slots, d1);
    for (int b = 0; b < d1; ++b) {
        int slot = 0;
        for (int s = 0; s < slots; ++s)
            if (sys.e.basis.states[b][s] == 1) slot = s;
        for (int k = 0; k < d1; ++k) u(slot, k) = sys.e.vectors(b, k);
    }

    // Normalized two-quantum product B_e^dag B_e'^dag |0>: amplitude
    // u_e[s] u_e'[t] + u_e[t] u_e'[s] on |1_s 1_t>, sqrt(2) u_e[s] u_e'[s]
    // on |2_s>; norm^2 = 1 + delta_ee'.
    auto pair_vector = [&](int e, int ep) {
        Eigen::VectorXd v(d2);
        for (int b = 0; b < d2; ++b) {
            const BasisState& st = sys.f.basis.states[b];
            int s = -1, t = -1;
            for (int k = 0; k < slots; ++k) {
                if (st[k] == 2) s = t = k;
                if (st[k] == 1) (s < 0 ? s : t) = k;
            }
            if (s == t)
                v[b] = std::sqrt(2.0) * u(s, e) * u(s, ep);
            else
                v[b] = u(s, e) * u(t, ep) + u(t, e) * u(s, ep);
        }
        v /= std::sqrt(e == ep ? 2.0 : 1.0);
        return v;
    };

    std::vector<AnharmonicShift> out;
    for (int f = 0; f < d2; ++f) {
        AnharmonicShift best;
        best.f = f;
        best.overlap = -1.0;
        for (int e = 0; e < d1; ++e) {
            for (int ep = e; ep < d1; ++ep) {
                const double ov = std::abs(pair_vector(e, ep).dot(sys.f.vectors.col(f)));
                if (ov > best.overlap) {
                    best.overlap = ov;
                    best.e_a = e;
                    best.e_b = ep;
                }
            }
        }
        best.shift_cm1 = sys.e.energies[best.e_a] + sys.e.energies[best.e_b] - sys.f.energies[f];
        out.push_back(best);
    }
    return out;
}

} // namespace polardqc
