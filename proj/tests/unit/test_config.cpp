#include "pullstream/config.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace pullstream;
namespace fs = std::filesystem;

TEST_CASE("empty document gives the documented defaults")
{
    const SimulationConfig c = parse_config("{}");
    CHECK(c.scenario.num_helpers == 2);
    CHECK(c.scenario.num_users == 20);
    CHECK(c.policy.phy == PhyMode::mimo);
    CHECK(c.policy.antennas == 10);
    CHECK(c.policy.max_active == 5);
    CHECK(c.policy.symbols_per_slot == 5e6);
    CHECK(c.policy.control_v == 10.0);
    CHECK(c.policy.utility == "log");
    CHECK(c.playback.threshold == 2.0);
    CHECK(c.playback.window == 20);
    CHECK(c.video.vbr.constants.gop_seconds == 0.5);
    CHECK(c.video.vbr.constants.frame_rate == 24.0);
    CHECK(c.video.vbr.base_bits_per_pixel.size() == 4);
    CHECK_FALSE(c.scenario_seed_fixed);
}

TEST_CASE("fields are read")
{
    const SimulationConfig c = parse_config(R"({
        "scenario": {"helpers": 1, "users": 3, "edges": {"rule": "explicit", "pairs": [[0,0],[0,1],[0,2]]}, "seed": 5},
        "video": {"chunks": 12, "gop_s": 1.0},
        "policy": {"V": 3.5, "phy": "A", "antennas": 4, "max_active": 2},
        "playback": {"threshold": 1.5, "window": 7},
        "run": {"horizon": 40, "seed": 9, "trace": true}
    })");
    CHECK(c.scenario.num_users == 3);
    CHECK(c.scenario.edge_rule == EdgeRule::explicit_list);
    CHECK(c.scenario.explicit_edges.size() == 3);
    CHECK(c.scenario_seed_fixed);
    CHECK(c.scenario.seed == 5);
    CHECK(c.scenario.mobility.slot_seconds == 1.0);
    CHECK(c.video.vbr.num_chunks == 12);
    CHECK(c.policy.phy == PhyMode::tdma);
    CHECK(c.policy.control_v == 3.5);
    CHECK(c.playback.window == 7);
    CHECK(c.run.horizon == 40);
    CHECK(c.run.trace);
}

TEST_CASE("errors name the field")
{
    CHECK_THROWS_WITH_AS(parse_config(R"({"policy": {"Vee": 1}})"), doctest::Contains("policy.Vee"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"policy": {"V": -1}})"), doctest::Contains("policy.V"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"policy": {"antennas": 4, "max_active": 5}})"),
                         doctest::Contains("policy.max_active"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"policy": {"phy": "C"}})"), doctest::Contains("policy.phy"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"video": {"base_bits_per_pixel": [0.2, 0.1]}})"),
                         doctest::Contains("video.base_bits_per_pixel"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"playback": {"window": 0}})"), doctest::Contains("playback.window"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"run": {"horizon": "long"}})"), doctest::Contains("run.horizon"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"video": {"traces": ["nope.csv"]}})"), doctest::Contains("nope.csv"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("{ not json"), doctest::Contains("malformed JSON"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"extra": {}})"), ConfigError);
}

TEST_CASE("missing file names the path")
{
    const fs::path p = fs::temp_directory_path() / "pullstream_missing_config.json";
    fs::remove(p);
    const std::string name = p.string();
    CHECK_THROWS_WITH(load_config(p), doctest::Contains(name.c_str()));
}

TEST_CASE("load from disk")
{
    const fs::path p = fs::temp_directory_path() / "pullstream_config_test.json";
    std::ofstream(p) << R"({"run": {"horizon": 3}})";
    CHECK(load_config(p).run.horizon == 3);
}

TEST_CASE("sweep parameters")
{
    SimulationConfig c = parse_config("{}");
    set_parameter(c, "V", 1e3);
    CHECK(c.policy.control_v == 1e3);
    set_parameter(c, "xi", 3.0);
    CHECK(c.playback.threshold == 3.0);
    set_parameter(c, "antennas", 20);
    set_parameter(c, "max_active", 10);
    CHECK(c.policy.antennas == 20);
    CHECK(c.policy.max_active == 10);
    set_parameter(c, "chunks", 50);
    CHECK(c.video.vbr.num_chunks == 50);
    CHECK_THROWS_AS(set_parameter(c, "window", 2.5), ConfigError);
    CHECK_THROWS_AS(set_parameter(c, "colour", 1.0), ConfigError);
    CHECK_THROWS_AS(set_parameter(c, "V", -1.0), ConfigError);
}
