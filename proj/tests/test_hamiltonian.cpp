#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "core/hamiltonian.hpp"
#include "helpers.hpp"

using namespace polardqc;
using polardqc::testing::amide1;
using polardqc::testing::amide12;

TEST_CASE("single-mode blocks match the term-by-term assembly") {
    const SystemSpec spec = amide1(50.0);

    const HermitianBlock b0 = build_block(spec, 0);
    CHECK(b0.matrix.rows() == 1);
    CHECK(b0.matrix(0, 0) == 0.0);

    const HermitianBlock b1 = build_block(spec, 1);
    // canonical basis {photon, vib}
    CHECK(b1.matrix(0, 0) == doctest::Approx(1625.0));
    CHECK(b1.matrix(1, 1) == doctest::Approx(1625.0));
    CHECK(b1.matrix(0, 1) == doctest::Approx(50.0));
    CHECK(b1.matrix(1, 0) == doctest::Approx(50.0));

    const HermitianBlock b2 = build_block(spec, 2);
    // canonical basis {2ph, ph+vib, 2vib}; overtone at 2*1625 - 15
    const double s2 = 50.0 * std::sqrt(2.0);
    Eigen::MatrixXd want(3, 3);
    want << 3250.0, s2, 0.0, s2, 3250.0, s2, 0.0, s2, 3235.0;
    CHECK((b2.matrix - want).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("two-mode block carries combination-band anharmonicity, switchable") {
    SystemSpec spec = amide12(0.0);
    const HermitianBlock b2 = build_block(spec, 2);
    // state (0,1,1): one quantum in each mode -> omega1 + omega2 - Delta12
    const int idx = b2.basis.index_of({0, 1, 1});
    REQUIRE(idx >= 0);
    CHECK(b2.matrix(idx, idx) == doctest::Approx(1625.0 + 1545.0 - 10.0));

    spec.cross_anharmonicity = false;
    const HermitianBlock off = build_block(spec, 2);
    CHECK(off.matrix(idx, idx) == doctest::Approx(1625.0 + 1545.0));
    // local overtones keep their own shift either way
    const int ov = off.basis.index_of({0, 2, 0});
    CHECK(off.matrix(ov, ov) == doctest::Approx(2.0 * 1625.0 - 15.0));
}

TEST_CASE("blocks are symmetric by construction, bit-exactly") {
    std::mt19937 rng(20240811);
    for (int rep = 0; rep < 25; ++rep) {
        const SystemSpec spec = polardqc::testing::random_spec(rng);
        for (int n = 0; n <= 2; ++n) {
            const HermitianBlock b = build_block(spec, n);
            CHECK((b.matrix - b.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("one-excitation trace is basis independent") {
    const SystemSpec spec = amide12(45.0);
    const HermitianBlock b1 = build_block(spec, 1);
    CHECK(b1.matrix.trace() == doctest::Approx(1625.0 + 1625.0 + 1545.0).epsilon(1e-14));
}

TEST_CASE("zero coupling decouples the photon, leaving bare-molecule energies") {
    const SystemSpec spec = amide12(0.0);
    const HermitianBlock b1 = build_block(spec, 1);
    // photon row/column vanish off-diagonal
    for (int k = 1; k < 3; ++k) {
        CHECK(b1.matrix(0, k) == 0.0);
        CHECK(b1.matrix(k, 0) == 0.0);
    }
    // the vibrational 2x2 subblock reproduces the bare J-coupled molecule
    Eigen::Matrix2d bare;
    bare << 1625.0, 15.0, 15.0, 1545.0;
    const Eigen::Vector2d want = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(bare).eigenvalues();
    const Eigen::Vector2d got =
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(b1.matrix.bottomRightCorner(2, 2)).eigenvalues();
    CHECK((got - want).cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("doubling the couplings doubles only the cavity-exchange entries") {
    const SystemSpec spec = amide12(35.0);
    SystemSpec doubled = spec;
    for (auto& g : doubled.gt) g *= 2.0;
    for (int n = 1; n <= 2; ++n) {
        const HermitianBlock a = build_block(spec, n);
        const HermitianBlock b = build_block(doubled, n);
        CHECK((a.matrix.diagonal() - b.matrix.diagonal()).cwiseAbs().maxCoeff() == 0.0);
        for (int r = 0; r < a.matrix.rows(); ++r)
            for (int c = 0; c < a.matrix.cols(); ++c) {
                if (r == c) continue;
                const bool cavity_exchange =
                    a.basis.states[r][0] != a.basis.states[c][0]; // photon number changes
                if (cavity_exchange)
                    CHECK(b.matrix(r, c) == doctest::Approx(2.0 * a.matrix(r, c)));
                else
                    CHECK(b.matrix(r, c) == a.matrix(r, c));
            }
    }
}

TEST_CASE("every term conserves total excitation") {
    for (const SystemSpec& spec : {amide1(50.0), amide12(45.0)}) {
        const ExcitationConservation chk = conserves_excitation(spec);
        CHECK(chk.conserved);
        CHECK(chk.max_off_block == 0.0);
    }
    // nonzero cross anharmonicity stays number-diagonal too
    SystemSpec cross = amide12(25.0);
    cross.Delta(0, 1) = cross.Delta(1, 0) = 55.0;
    CHECK(conserves_excitation(cross).conserved);
}

TEST_CASE("block csv dump has labeled rows and columns") {
    std::ostringstream os;
    write_block_csv(build_block(amide1(50.0), 1), os);
    const std::string text = os.str();
    CHECK(text.find("basis,1;0,0;1") == 0);
    CHECK(text.find("1;0,1625,50") != std::string::npos);
}
