#ifndef POLARDQC_CONFIG_HPP
#define POLARDQC_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "signal.hpp"
#include "system.hpp"

namespace polardqc {

// Everything a run needs, as read from a config file or preset. The cavity
// couplings are split into a fixed per-mode base vector and a list of sweep
// scale factors; the effective coupling at sweep value s is gt_i = s * base_i,
// which keeps the gt_1/gt_2 ratio constant across a sweep. With derive_gt the
// base vector is computed from cavity geometry (single-molecule coupling fed
// through the collective effective-coupling formula) instead of being given.
struct RunConfig {
    std::vector<VibrationalMode> modes;
    CavitySpec cavity;
    std::vector<double> J;     // row-major m x m
    std::vector<double> Delta; // row-major m x m
    std::vector<double> gt_base;
    bool derive_gt = false;
    bool allow_weak_coupling = false; // derive_gt: warn and use gt = 0 instead of failing

    DephasingModel dephasing = DephasingModel::Composition;
    double gamma_override = 0.0;
    bool cross_anharmonicity = true;
    double cavity_leak_dipole = 0.0;

    double t1_fs = 0.0;
    FrequencyGrid grid;
    std::vector<double> sweep{1.0};

    double threshold = 0.05;
    double assign_tolerance = 0.0; // 0 = auto (max gamma_ab)
    double min_separation = 0.0;   // 0 = keep all strict maxima

    std::string preset_name; // provenance only

    int mode_count() const { return static_cast<int>(modes.size()); }
};

// Parse errors carry "<source>:<line>: ..." diagnostics.
RunConfig parse_config_text(const std::string& text, const std::string& source_name);
RunConfig load_config(const std::string& path);

// Bundled parameter sets; names: "amide-I", "amide-I+II".
const std::vector<std::string>& preset_names();
const std::string& preset_text(const std::string& name); // throws NotFound
RunConfig preset_config(const std::string& name);

// Canonical serialization: every field explicit, shortest round-trip floats.
// parse_config_text(canonical_config_text(c)) reproduces c field-identically.
std::string canonical_config_text(const RunConfig& cfg);

// FNV-1a over the canonical text (provenance hash in outputs).
std::uint64_t config_hash(const RunConfig& cfg);

// Validated physical system at one sweep value.
SystemSpec make_system(const RunConfig& cfg, double gt_scale);

} // namespace polardqc

#endif
