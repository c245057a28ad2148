#pragma once

#include "pullstream/playback.hpp"
#include "pullstream/scenario.hpp"
#include "pullstream/video_model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pullstream {

enum class PhyMode { tdma, mimo }; // "A" and "B" in configuration files

struct VideoSection {
    VbrParams vbr;
    std::vector<std::filesystem::path> traces;  // non-empty: replaces the synthetic library
    std::vector<std::size_t> assignment;        // file index per user; empty: u mod |library|
};

struct PolicySection {
    double control_v = 10.0;
    std::string utility = "log";
    PhyMode phy = PhyMode::mimo;
    int antennas = 10;
    int max_active = 5;
    double symbols_per_slot = 5e6;  // n
    // Bit unit of Q and k*B inside the quality decision. The virtual queue
    // moves by at most D_max per slot, so raw bits would need ~1e12 slots to
    // balance k*Q*B against Theta*D.
    double queue_unit_bits = 5e6;
};

struct RunSection {
    Slot horizon = 1000;
    std::uint64_t seed = 1;
    bool trace = false;
};

/// Complete simulation configuration; every field has a documented default.
struct SimulationConfig {
    ScenarioConfig scenario;
    bool scenario_seed_fixed = false;  // scenario.seed given explicitly
    VideoSection video;
    PolicySection policy;
    BufferingParams playback;
    RunSection run;
};

/// Parses and validates a JSON document. Unknown keys and invalid values raise
/// ConfigError naming the field. Relative trace paths resolve against base_dir.
SimulationConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});

/// Reads a configuration file. A missing or unreadable file raises
/// std::runtime_error naming the path.
SimulationConfig load_config(const std::filesystem::path& path);

/// Cross-field checks (S_max <= M, n >= 1, horizon >= 0, trace files exist, ...).
void validate(const SimulationConfig& config);

/// Overrides one numeric parameter by name, as used by parameter sweeps.
/// Known names: V, xi, window, antennas, max_active, symbols_per_slot,
/// queue_unit_bits, seed, horizon, power, chunks.
void set_parameter(SimulationConfig& config, const std::string& name, double value);

} // namespace pullstream
