#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/config.hpp"
#include "core/csvio.hpp"

using namespace polardqc;

TEST_CASE("presets carry the bundled parameter sets") {
    const RunConfig one = preset_config("amide-I");
    CHECK(one.mode_count() == 1);
    CHECK(one.modes[0].omega_cm1 == 1625.0);
    CHECK(one.modes[0].gamma_cm1 == 20.0);
    CHECK(one.Delta[0] == 15.0);
    CHECK(one.cavity.omega0_cm1 == 1625.0);
    CHECK(one.cavity.n_eff == 0.5);
    CHECK(one.cavity.kappa_cm1 == 0.0);
    CHECK(one.sweep == std::vector<double>{50.0});
    CHECK(one.grid.w2_lo == 2950.0);
    CHECK(one.grid.w3_hi == 1850.0);
    CHECK(one.threshold == 0.05);
    CHECK(one.preset_name == "amide-I");

    const RunConfig two = preset_config("amide-I+II");
    CHECK(two.mode_count() == 2);
    CHECK(two.modes[1].omega_cm1 == 1545.0);
    CHECK(two.modes[1].mu_debye == 0.5);
    CHECK(two.J == std::vector<double>{0.0, 15.0, 15.0, 0.0});
    CHECK(two.Delta == std::vector<double>{15.0, 10.0, 10.0, 11.0});
    CHECK(two.sweep == std::vector<double>{60.0});

    CHECK_THROWS_AS(preset_config("amide-III"), Error);
    try {
        preset_config("amide-III");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotFound);
    }
}

TEST_CASE("parse errors carry line and field diagnostics") {
    const std::string bad = "[cavity]\nomega0 = 1625\n\n[mode]\nomega == 1625\n";
    try {
        parse_config_text(bad, "test.cfg");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(std::string(e.what()).find("test.cfg:5") != std::string::npos);
    }

    try {
        parse_config_text("[cavity]\nomge = 1\n\n[mode]\nomega = 1\n", "t.cfg");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("t.cfg:2") != std::string::npos);
        CHECK(std::string(e.what()).find("omge") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config_text("[nope]\nx = 1\n", "t.cfg"), Error);
    CHECK_THROWS_AS(parse_config_text("omega = 1\n", "t.cfg"), Error); // key before section
    CHECK_THROWS_AS(parse_config_text("[cavity]\nomega0 = 1625\n", "t.cfg"), Error); // no mode
}

TEST_CASE("matrix symmetry is validated at parse time") {
    const std::string base = "[mode]\nomega = 1625\n\n[mode]\nomega = 1545\n\n";
    CHECK_THROWS_AS(parse_config_text(base + "[couplings]\nj = 0 15 14 0\n", "t.cfg"), Error);
    CHECK_THROWS_AS(parse_config_text(base + "[couplings]\nj = 1 15 15 0\n", "t.cfg"), Error);
    CHECK_THROWS_AS(parse_config_text(base + "[couplings]\ndelta = 15 10 9 11\n", "t.cfg"), Error);
    CHECK_THROWS_AS(parse_config_text(base + "[couplings]\nj = 0 15 15\n", "t.cfg"), Error);
    CHECK_NOTHROW(parse_config_text(base + "[couplings]\nj = 0 15 15 0\n", "t.cfg"));
}

TEST_CASE("grid strings round-trip and bad ones are rejected") {
    const RunConfig cfg = parse_config_text(
        "[mode]\nomega = 1625\n\n[signal]\ngrid = 3000:3400:2,1450:1800:0.5\n", "t.cfg");
    CHECK(cfg.grid.w2_lo == 3000.0);
    CHECK(cfg.grid.w2_step == 2.0);
    CHECK(cfg.grid.w3_step == 0.5);
    CHECK_THROWS_AS(
        parse_config_text("[mode]\nomega = 1\n\n[signal]\ngrid = 1:2\n", "t.cfg"), Error);
}

TEST_CASE("canonical text round-trips byte-identically") {
    for (const std::string name : {"amide-I", "amide-I+II"}) {
        RunConfig cfg = preset_config(name);
        // make the floats ugly on purpose
        cfg.modes[0].mu_debye = 0.1 + 0.2;
        cfg.t1_fs = 1.0 / 3.0;
        cfg.sweep = {0.0, 12.34567890123456789, 80.0};
        const std::string text = canonical_config_text(cfg);
        const RunConfig back = parse_config_text(text, "round");
        CHECK(canonical_config_text(back) == text);
        CHECK(back.modes[0].mu_debye == cfg.modes[0].mu_debye);
        CHECK(back.t1_fs == cfg.t1_fs);
        CHECK(back.sweep == cfg.sweep);
        CHECK(back.preset_name == cfg.preset_name);
        CHECK(config_hash(back) == config_hash(cfg));
    }
}

TEST_CASE("the hash notices any field change") {
    const RunConfig a = preset_config("amide-I");
    RunConfig b = a;
    b.threshold = 0.06;
    CHECK(config_hash(a) != config_hash(b));
    RunConfig c = a;
    c.modes[0].gamma_cm1 = 21.0;
    CHECK(config_hash(a) != config_hash(c));
}

TEST_CASE("gamma_override > 0 selects the flat model regardless of key order") {
    const RunConfig cfg = parse_config_text(
        "[mode]\nomega = 1625\n\n[signal]\ngamma_override = 20\ndephasing = composition\n",
        "t.cfg");
    CHECK(cfg.dephasing == DephasingModel::Flat);
}

TEST_CASE("make_system applies the sweep scale to the base couplings") {
    const RunConfig cfg = preset_config("amide-I+II");
    const SystemSpec spec = make_system(cfg, 60.0);
    CHECK(spec.gt == std::vector<double>{60.0, 60.0});
    CHECK(spec.J(0, 1) == 15.0);
    CHECK(spec.Delta(1, 1) == 11.0);
}

TEST_CASE("derived couplings follow the geometry and the collective formula") {
    RunConfig cfg = preset_config("amide-I");
    cfg.derive_gt = true;
    cfg.cavity.n_molecules = 1e12;
    cfg.modes[0].gamma_cm1 = 0.0; // kappa = gamma = 0: gt = sqrt(N) g1
    const SystemSpec spec = make_system(cfg, 1.0);
    CavitySpec single = cfg.cavity;
    single.n_molecules = 1.0;
    const double g1 = coupling_from_geometry(cfg.modes[0], single);
    CHECK(spec.gt[0] == doctest::Approx(1e6 * g1).epsilon(1e-12));

    // overdamped case refuses, or warns down to zero when allowed
    RunConfig weak = preset_config("amide-I");
    weak.derive_gt = true; // single molecule: g ~ 1.7e-4 << gamma/2
    CHECK_THROWS_AS(make_system(weak, 1.0), Error);
    weak.allow_weak_coupling = true;
    CHECK(make_system(weak, 1.0).gt[0] == 0.0);
}

#ifdef POLARDQC_SOURCE_DIR
TEST_CASE("shipped preset files stay in sync with the embedded text") {
    for (const std::string name : {"amide-I", "amide-I+II"}) {
        std::ifstream in(std::string(POLARDQC_SOURCE_DIR) + "/presets/" + name + ".cfg",
                         std::ios::binary);
        REQUIRE(in.good());
        std::ostringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == preset_text(name));
    }
}
#endif

TEST_CASE("shortest round-trip formatting for config floats") {
    CHECK(fmt_exact(0.05) == "0.05");
    CHECK(fmt_exact(1625.0) == "1625");
    const double ugly = 0.1 + 0.2;
    CHECK(std::stod(fmt_exact(ugly)) == ugly);
}
