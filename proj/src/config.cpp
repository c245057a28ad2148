#include "pullstream/config.hpp"

#include "pullstream/policy.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace pullstream {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& section, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        throw ConfigError(section + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw ConfigError("unknown field '" + section + "." + key + "'");
    }
}

template <typename T>
void read(const json& obj, const char* key, const std::string& section, T& out)
{
    const auto it = obj.find(key);
    if (it == obj.end())
        return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + section + "." + key + "' has the wrong type");
    }
}

std::vector<Position> read_positions(const json& value, const std::string& field)
{
    std::vector<Position> out;
    if (!value.is_array())
        throw ConfigError("field '" + field + "' must be an array of [x, y] pairs");
    for (const auto& p : value) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ConfigError("field '" + field + "' must be an array of [x, y] pairs");
        out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
}

void parse_scenario(const json& s, SimulationConfig& cfg)
{
    const std::string sec = "scenario";
    check_keys(s, sec, {"helpers", "users", "area_m", "helper_positions", "user_positions", "power", "powers",
                        "edges", "mobility", "path_loss", "seed"});
    ScenarioConfig& sc = cfg.scenario;
    read(s, "helpers", sec, sc.num_helpers);
    read(s, "users", sec, sc.num_users);
    read(s, "area_m", sec, sc.area_m);
    read(s, "power", sec, sc.helper_power);
    read(s, "powers", sec, sc.helper_powers);
    if (s.contains("helper_positions"))
        sc.helper_positions = read_positions(s["helper_positions"], "scenario.helper_positions");
    if (s.contains("user_positions"))
        sc.user_positions = read_positions(s["user_positions"], "scenario.user_positions");
    if (s.contains("seed")) {
        read(s, "seed", sec, sc.seed);
        cfg.scenario_seed_fixed = true;
    }
    if (s.contains("edges")) {
        const json& e = s["edges"];
        check_keys(e, "scenario.edges", {"rule", "distance_m", "pairs"});
        std::string rule = "all";
        read(e, "rule", "scenario.edges", rule);
        if (rule == "all") {
            sc.edge_rule = EdgeRule::all_pairs;
        } else if (rule == "threshold") {
            sc.edge_rule = EdgeRule::distance_threshold;
            read(e, "distance_m", "scenario.edges", sc.edge_threshold_m);
        } else if (rule == "explicit") {
            sc.edge_rule = EdgeRule::explicit_list;
            read(e, "pairs", "scenario.edges", sc.explicit_edges);
        } else {
            throw ConfigError("field 'scenario.edges.rule': expected all, threshold or explicit");
        }
    }
    if (s.contains("mobility")) {
        const json& m = s["mobility"];
        check_keys(m, "scenario.mobility", {"mode", "speed_mps"});
        std::string mode = "static";
        read(m, "mode", "scenario.mobility", mode);
        if (mode == "static")
            sc.mobility.mode = MobilityMode::static_positions;
        else if (mode == "waypoint")
            sc.mobility.mode = MobilityMode::waypoint;
        else
            throw ConfigError("field 'scenario.mobility.mode': expected static or waypoint");
        read(m, "speed_mps", "scenario.mobility", sc.mobility.speed_mps);
    }
    if (s.contains("path_loss")) {
        const json& p = s["path_loss"];
        check_keys(p, "scenario.path_loss", {"d0_m", "exponent"});
        read(p, "d0_m", "scenario.path_loss", sc.path_loss.reference_distance_m);
        read(p, "exponent", "scenario.path_loss", sc.path_loss.exponent);
    }
}

void parse_video(const json& v, SimulationConfig& cfg, const std::filesystem::path& base_dir)
{
    const std::string sec = "video";
    check_keys(v, sec, {"frame_rate", "gop_s", "pixels_per_frame", "files", "chunks", "base_bits_per_pixel", "sigma",
                        "quality_scale", "quality_exponent", "traces", "assignment"});
    VbrParams& p = cfg.video.vbr;
    read(v, "frame_rate", sec, p.constants.frame_rate);
    read(v, "gop_s", sec, p.constants.gop_seconds);
    read(v, "pixels_per_frame", sec, p.constants.pixels_per_frame);
    read(v, "files", sec, p.num_files);
    read(v, "chunks", sec, p.num_chunks);
    read(v, "base_bits_per_pixel", sec, p.base_bits_per_pixel);
    read(v, "sigma", sec, p.sigma);
    read(v, "quality_scale", sec, p.quality_scale);
    read(v, "quality_exponent", sec, p.quality_exponent);
    read(v, "assignment", sec, cfg.video.assignment);
    std::vector<std::string> traces;
    read(v, "traces", sec, traces);
    for (const auto& t : traces) {
        std::filesystem::path path(t);
        cfg.video.traces.push_back(path.is_relative() && !base_dir.empty() ? base_dir / path : path);
    }
}

void parse_policy(const json& p, SimulationConfig& cfg)
{
    const std::string sec = "policy";
    check_keys(p, sec, {"V", "utility", "phy", "antennas", "max_active", "symbols_per_slot", "queue_unit_bits"});
    PolicySection& ps = cfg.policy;
    read(p, "V", sec, ps.control_v);
    read(p, "utility", sec, ps.utility);
    read(p, "antennas", sec, ps.antennas);
    read(p, "max_active", sec, ps.max_active);
    read(p, "symbols_per_slot", sec, ps.symbols_per_slot);
    read(p, "queue_unit_bits", sec, ps.queue_unit_bits);
    std::string phy = "B";
    read(p, "phy", sec, phy);
    if (phy == "A")
        ps.phy = PhyMode::tdma;
    else if (phy == "B")
        ps.phy = PhyMode::mimo;
    else
        throw ConfigError("field 'policy.phy': expected \"A\" or \"B\"");
}

} // namespace

SimulationConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    check_keys(doc, "config", {"scenario", "video", "policy", "playback", "run"});

    SimulationConfig cfg;
    if (doc.contains("scenario"))
        parse_scenario(doc["scenario"], cfg);
    if (doc.contains("video"))
        parse_video(doc["video"], cfg, base_dir);
    if (doc.contains("policy"))
        parse_policy(doc["policy"], cfg);
    if (doc.contains("playback")) {
        const json& pb = doc["playback"];
        check_keys(pb, "playback", {"threshold", "window"});
        read(pb, "threshold", "playback", cfg.playback.threshold);
        read(pb, "window", "playback", cfg.playback.window);
    }
    if (doc.contains("run")) {
        const json& r = doc["run"];
        check_keys(r, "run", {"horizon", "seed", "trace"});
        read(r, "horizon", "run", cfg.run.horizon);
        read(r, "seed", "run", cfg.run.seed);
        read(r, "trace", "run", cfg.run.trace);
    }
    cfg.scenario.mobility.slot_seconds = cfg.video.vbr.constants.gop_seconds;
    cfg.scenario.antennas = cfg.policy.phy == PhyMode::mimo ? cfg.policy.antennas : 1;
    validate(cfg);
    return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read configuration file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str(), path.parent_path());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void validate(const SimulationConfig& cfg)
{
    const auto& p = cfg.policy;
    if (!(p.control_v > 0.0) || !std::isfinite(p.control_v))
        throw ConfigError("field 'policy.V': must be positive");
    utility_from_name(p.utility);
    if (!(p.symbols_per_slot >= 1.0))
        throw ConfigError("field 'policy.symbols_per_slot': must be >= 1");
    if (!(p.queue_unit_bits > 0.0) || !std::isfinite(p.queue_unit_bits))
        throw ConfigError("field 'policy.queue_unit_bits': must be positive");
    if (p.phy == PhyMode::mimo) {
        if (p.antennas < 1)
            throw ConfigError("field 'policy.antennas': must be >= 1");
        if (p.max_active < 1 || p.max_active > p.antennas)
            throw ConfigError("field 'policy.max_active': must lie in [1, policy.antennas]");
    }
    if (cfg.run.horizon < 0)
        throw ConfigError("field 'run.horizon': must be >= 0");
    if (cfg.playback.window < 1)
        throw ConfigError("field 'playback.window': must be >= 1");
    if (!(cfg.playback.threshold > 0.0))
        throw ConfigError("field 'playback.threshold': must be > 0");

    const auto& s = cfg.scenario;
    if (s.num_helpers < 1)
        throw ConfigError("field 'scenario.helpers': must be >= 1");
    if (s.num_users < 1)
        throw ConfigError("field 'scenario.users': must be >= 1");
    if (!(s.area_m > 0.0))
        throw ConfigError("field 'scenario.area_m': must be positive");
    if (!(s.helper_power >= 0.0))
        throw ConfigError("field 'scenario.power': must be >= 0");
    if (!(s.path_loss.reference_distance_m > 0.0))
        throw ConfigError("field 'scenario.path_loss.d0_m': must be positive");
    if (!(s.path_loss.exponent > 0.0))
        throw ConfigError("field 'scenario.path_loss.exponent': must be positive");
    if (!(s.mobility.speed_mps >= 0.0))
        throw ConfigError("field 'scenario.mobility.speed_mps': must be >= 0");

    const auto& v = cfg.video;
    if (v.vbr.num_chunks < 1)
        throw ConfigError("field 'video.chunks': must be >= 1");
    if (v.vbr.num_files < 1)
        throw ConfigError("field 'video.files': must be >= 1");
    if (v.vbr.base_bits_per_pixel.empty())
        throw ConfigError("field 'video.base_bits_per_pixel': must not be empty");
    for (std::size_t m = 1; m < v.vbr.base_bits_per_pixel.size(); ++m)
        if (!(v.vbr.base_bits_per_pixel[m] > v.vbr.base_bits_per_pixel[m - 1]))
            throw ConfigError("field 'video.base_bits_per_pixel': must be strictly increasing");
    for (const auto& t : v.traces)
        if (!std::filesystem::exists(t))
            throw ConfigError("field 'video.traces': file '" + t.string() + "' does not exist");
    const std::size_t files = v.traces.empty() ? v.vbr.num_files : v.traces.size();
    if (!v.assignment.empty()) {
        if (v.assignment.size() != s.num_users)
            throw ConfigError("field 'video.assignment': expected one entry per user");
        for (std::size_t f : v.assignment)
            if (f >= files)
                throw ConfigError("field 'video.assignment': file index " + std::to_string(f) + " out of range");
    }
}

void set_parameter(SimulationConfig& cfg, const std::string& name, double value)
{
    const auto as_int = [&](const char* field) {
        if (value != std::floor(value))
            throw ConfigError(std::string("parameter '") + field + "' must be an integer");
        return static_cast<std::int64_t>(value);
    };
    if (name == "V") {
        cfg.policy.control_v = value;
    } else if (name == "xi") {
        cfg.playback.threshold = value;
    } else if (name == "window") {
        cfg.playback.window = as_int("window");
    } else if (name == "antennas") {
        cfg.policy.antennas = static_cast<int>(as_int("antennas"));
        if (cfg.policy.phy == PhyMode::mimo)
            cfg.scenario.antennas = cfg.policy.antennas;
    } else if (name == "max_active") {
        cfg.policy.max_active = static_cast<int>(as_int("max_active"));
    } else if (name == "symbols_per_slot") {
        cfg.policy.symbols_per_slot = value;
    } else if (name == "queue_unit_bits") {
        cfg.policy.queue_unit_bits = value;
    } else if (name == "seed") {
        cfg.run.seed = static_cast<std::uint64_t>(as_int("seed"));
    } else if (name == "horizon") {
        cfg.run.horizon = as_int("horizon");
    } else if (name == "power") {
        cfg.scenario.helper_power = value;
        cfg.scenario.helper_powers.clear();
    } else if (name == "chunks") {
        cfg.video.vbr.num_chunks = as_int("chunks");
    } else {
        throw ConfigError("unknown sweep parameter '" + name + "'");
    }
    validate(cfg);
}

} // namespace pullstream
