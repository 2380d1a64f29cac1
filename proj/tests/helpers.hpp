#ifndef POLARDQC_TEST_HELPERS_HPP
#define POLARDQC_TEST_HELPERS_HPP

#include <random>

#include "core/config.hpp"
#include "core/signal.hpp"

namespace polardqc::testing {

// Table-style single-mode system (amide-I in a resonant cavity).
inline SystemSpec amide1(double gt, double delta11 = 15.0,
                         DephasingModel model = DephasingModel::Composition,
                         double override_gamma = 0.0) {
    SystemSpec s;
    s.modes = {{1625.0, 20.0, 1.0, 1.0}};
    s.cavity = {1625.0, 0.0, 0.5, 0.0, 1.0};
    s.J = Eigen::MatrixXd::Zero(1, 1);
    s.Delta = Eigen::MatrixXd::Constant(1, 1, delta11);
    s.gt = {gt};
    s.dephasing = model;
    s.gamma_override = override_gamma;
    return s;
}

// Two-mode system (amide-I + amide-II, J-coupled, mu2 = mu1/2).
inline SystemSpec amide12(double gt, bool harmonic = false,
                          DephasingModel model = DephasingModel::Composition,
                          double override_gamma = 0.0) {
    SystemSpec s;
    s.modes = {{1625.0, 20.0, 1.0, 1.0}, {1545.0, 20.0, 0.5, 1.0}};
    s.cavity = {1625.0, 0.0, 0.5, 0.0, 1.0};
    s.J.resize(2, 2);
    s.J << 0, 15, 15, 0;
    s.Delta.resize(2, 2);
    if (harmonic)
        s.Delta.setZero();
    else
        s.Delta << 15, 10, 10, 11;
    s.gt = {gt, gt};
    s.dephasing = model;
    s.gamma_override = override_gamma;
    return s;
}

// Randomized valid system for property-style loops (fixed seed outside).
inline SystemSpec random_spec(std::mt19937& rng) {
    std::uniform_int_distribution<int> mdist(1, 3);
    std::uniform_real_distribution<double> w(1200.0, 1900.0);
    std::uniform_real_distribution<double> small(0.0, 25.0);
    std::uniform_real_distribution<double> mu(0.1, 2.0);
    const int m = mdist(rng);
    SystemSpec s;
    for (int i = 0; i < m; ++i) s.modes.push_back({w(rng), small(rng), mu(rng), 1.0});
    s.cavity = {w(rng), 0.0, 0.5, small(rng), 1.0};
    s.J = Eigen::MatrixXd::Zero(m, m);
    s.Delta = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            if (i != j) s.J(i, j) = s.J(j, i) = small(rng);
            s.Delta(i, j) = s.Delta(j, i) = small(rng);
        }
    for (int i = 0; i < m; ++i) s.gt.push_back(small(rng) * 3.0);
    return s;
}

inline FrequencyGrid coarse_grid() {
    FrequencyGrid g;
    g.w2_step = 5.0;
    g.w3_step = 5.0;
    return g;
}

} // namespace polardqc::testing

#endif
