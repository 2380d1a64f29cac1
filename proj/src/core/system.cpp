#include "system.hpp"

#include <cmath>
#include <sstream>

#include "units.hpp"

namespace polardqc {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

void SystemSpec::validate() const {
    const int m = mode_count();
    if (m < 1) fail(ErrorCode::Validate, "at least one vibrational mode is required");
    for (int i = 0; i < m; ++i) {
        const auto& md = modes[i];
        if (!(md.omega_cm1 > 0.0))
            fail(ErrorCode::Validate, "mode " + std::to_string(i + 1) + ": omega must be > 0, got " + fmt(md.omega_cm1));
        if (md.gamma_cm1 < 0.0)
            fail(ErrorCode::Validate, "mode " + std::to_string(i + 1) + ": gamma must be >= 0");
        if (md.mu_debye < 0.0)
            fail(ErrorCode::Validate, "mode " + std::to_string(i + 1) + ": mu must be >= 0");
        if (md.cos_align < -1.0 || md.cos_align > 1.0)
            fail(ErrorCode::Validate, "mode " + std::to_string(i + 1) + ": cos projection must lie in [-1, 1]");
    }
    if (!(cavity.omega0_cm1 > 0.0)) fail(ErrorCode::Validate, "cavity: omega0 must be > 0");
    if (!(cavity.n_eff > 0.0)) fail(ErrorCode::Validate, "cavity: n_eff must be > 0");
    if (cavity.kappa_cm1 < 0.0) fail(ErrorCode::Validate, "cavity: kappa must be >= 0");
    if (cavity.n_molecules < 1.0) fail(ErrorCode::Validate, "cavity: molecule count N must be >= 1");

    if (J.rows() != m || J.cols() != m)
        fail(ErrorCode::Validate, "J must be " + std::to_string(m) + "x" + std::to_string(m));
    if (Delta.rows() != m || Delta.cols() != m)
        fail(ErrorCode::Validate, "Delta must be " + std::to_string(m) + "x" + std::to_string(m));
    for (int i = 0; i < m; ++i) {
        if (J(i, i) != 0.0) fail(ErrorCode::Validate, "J must have zero diagonal");
        for (int j = 0; j < m; ++j) {
            if (J(i, j) != J(j, i)) fail(ErrorCode::Validate, "J must be symmetric (J_ij == J_ji exactly)");
            if (Delta(i, j) != Delta(j, i)) fail(ErrorCode::Validate, "Delta must be symmetric");
        }
    }
    if (static_cast<int>(gt.size()) != m)
        fail(ErrorCode::Validate, "gt must list one effective coupling per mode");
    for (int i = 0; i < m; ++i)
        if (gt[i] < 0.0) fail(ErrorCode::Validate, "gt must be >= 0");

    if (dephasing == DephasingModel::Flat && !(gamma_override > 0.0))
        fail(ErrorCode::Validate, "flat dephasing requires gamma_override > 0");
}

double cavity_frequency(const CavitySpec& cavity) {
    const double s = std::sin(cavity.theta_deg * M_PI / 180.0);
    const double x = s * s / (cavity.n_eff * cavity.n_eff);
    // sin(30 deg) etc. round below the exact pole; keep a guard band so the
    // analytically evanescent inputs are rejected rather than blown up.
    if (x >= 1.0 - 1e-12)
        fail(ErrorCode::Domain, "evanescent regime: sin^2(theta)/n_eff^2 = " + fmt(x) +
                                    " >= 1, no propagating cavity mode");
    return cavity.omega0_cm1 / std::sqrt(1.0 - x);
}

double coupling_from_geometry(const VibrationalMode& mode, const CavitySpec& cavity) {
    const double wc = cavity_frequency(cavity);             // cm^-1
    const double photon_J = units::joule_per_cm1 * wc;      // hbar * omega_c
    const double lambda_m = 0.01 / wc;                      // resonance wavelength
    const double volume_m3 = std::pow(lambda_m / cavity.n_eff, 3);
    const double mu_Cm = mode.mu_debye * units::debye_C_m * mode.cos_align;
    const double g_J = std::sqrt(cavity.n_molecules) * mu_Cm *
                       std::sqrt(photon_J / (2.0 * units::epsilon0_F_m * volume_m3));
    return g_J / units::joule_per_cm1;
}

double effective_coupling(double g_cm1, double n_molecules, double kappa_cm1, double gamma_cm1) {
    const double half = 0.5 * (kappa_cm1 - gamma_cm1);
    const double radicand = n_molecules * g_cm1 * g_cm1 - half * half;
    if (radicand < 0.0)
        fail(ErrorCode::WeakCoupling,
             "weak coupling: N g^2 = " + fmt(n_molecules * g_cm1 * g_cm1) +
                 " < (kappa - gamma)^2/4 = " + fmt(half * half) + ", no real splitting");
    return std::sqrt(radicand);
}

double detuning(const VibrationalMode& mode, const CavitySpec& cavity) {
    return mode.omega_cm1 - cavity_frequency(cavity);
}

} // namespace polardqc
