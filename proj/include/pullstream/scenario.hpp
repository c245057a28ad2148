#pragma once

#include "pullstream/types.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace pullstream {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance(Position a, Position b);

struct PathLossParams {
    double reference_distance_m = 40.0; // gain is 1/2 here
    double exponent = 3.5;
};

/// Bounded path-loss model 1 / (1 + (d/d0)^beta).
double path_gain(double distance_m, const PathLossParams& params = {});

enum class EdgeRule { all_pairs, distance_threshold, explicit_list };

enum class MobilityMode { static_positions, waypoint };

struct MobilityParams {
    MobilityMode mode = MobilityMode::static_positions;
    double speed_mps = 1.0;
    double slot_seconds = 0.5;
};

struct ScenarioConfig {
    std::size_t num_helpers = 2;
    std::size_t num_users = 20;
    double area_m = 100.0;                    // side of the square deployment area
    std::vector<Position> helper_positions;   // empty: evenly spaced on the midline
    std::vector<Position> user_positions;     // empty: uniform in the area
    double helper_power = 100.0;              // linear, per helper unless overridden
    std::vector<double> helper_powers;
    int antennas = 1;
    EdgeRule edge_rule = EdgeRule::all_pairs;
    double edge_threshold_m = 60.0;
    std::vector<std::pair<std::size_t, std::size_t>> explicit_edges; // (helper, user)
    MobilityParams mobility;
    PathLossParams path_loss;
    std::uint64_t seed = 20140101;
};

struct HelperNode {
    HelperId id{};
    Position position;
    double power = 1.0;
    int antennas = 1;
};

struct UserNode {
    UserId id{};
    Position position;
};

/// Bipartite helper/user graph with derived neighborhoods.
class Topology {
public:
    Topology(std::vector<HelperNode> helpers, std::vector<UserNode> users,
             std::vector<std::pair<HelperId, UserId>> edges);

    const std::vector<HelperNode>& helpers() const { return helpers_; }
    const std::vector<UserNode>& users() const { return users_; }
    const std::vector<std::pair<HelperId, UserId>>& edges() const { return edges_; }

    std::size_t num_helpers() const { return helpers_.size(); }
    std::size_t num_users() const { return users_.size(); }

    const HelperNode& helper(HelperId h) const { return helpers_.at(index(h)); }
    const UserNode& user(UserId u) const { return users_.at(index(u)); }

    /// N(u), ascending helper ids.
    std::span<const HelperId> helpers_of(UserId u) const { return user_neighbors_.at(index(u)); }
    /// N(h), ascending user ids.
    std::span<const UserId> users_of(HelperId h) const { return helper_neighbors_.at(index(h)); }

    bool connected(HelperId h, UserId u) const;

private:
    std::vector<HelperNode> helpers_;
    std::vector<UserNode> users_;
    std::vector<std::pair<HelperId, UserId>> edges_;
    std::vector<std::vector<HelperId>> user_neighbors_;
    std::vector<std::vector<UserId>> helper_neighbors_;
};

/// Builds the topology. Random user placement draws from a stream seeded by
/// config.seed only, so repeated calls give the same graph.
Topology build_topology(const ScenarioConfig& config);

/// The slow-fading part of the network state at one slot.
struct NetworkState {
    Slot slot = 1;
    std::size_t num_helpers = 0;
    std::size_t num_users = 0;
    std::vector<double> gains;               // row-major [helper][user], every pair
    std::vector<Position> user_positions;
    std::vector<Position> waypoints;

    double gain(HelperId h, UserId u) const { return gains[index(h) * num_users + index(u)]; }
};

NetworkState initial_state(const Topology& topo, const PathLossParams& path_loss,
                           const MobilityParams& mobility, double area_m, std::mt19937_64& rng);

/// Moves to slot t+1. Static mobility keeps gains bit-identical; waypoint
/// mobility walks each user toward its waypoint and recomputes every gain.
NetworkState advance_state(const NetworkState& state, const Topology& topo,
                           const MobilityParams& mobility, const PathLossParams& path_loss,
                           double area_m, std::mt19937_64& rng);

} // namespace pullstream
