#include "pullstream/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace pullstream {

double distance(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

double path_gain(double distance_m, const PathLossParams& params)
{
    const double ratio = std::max(distance_m, 0.0) / params.reference_distance_m;
    return 1.0 / (1.0 + std::pow(ratio, params.exponent));
}

Topology::Topology(std::vector<HelperNode> helpers, std::vector<UserNode> users,
                   std::vector<std::pair<HelperId, UserId>> edges)
    : helpers_(std::move(helpers)), users_(std::move(users)), edges_(std::move(edges)),
      user_neighbors_(users_.size()), helper_neighbors_(helpers_.size())
{
    if (helpers_.empty())
        throw ConfigError("scenario.helpers: at least one helper is required");
    if (users_.empty())
        throw ConfigError("scenario.users: at least one user is required");
    for (const auto& h : helpers_) {
        if (h.antennas < 1)
            throw ConfigError("helper " + std::to_string(index(h.id)) + ": antennas must be >= 1");
        if (!(h.power >= 0.0) || !std::isfinite(h.power))
            throw ConfigError("helper " + std::to_string(index(h.id)) + ": power must be finite and >= 0");
    }

    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (auto [h, u] : edges_) {
        if (index(h) >= helpers_.size() || index(u) >= users_.size())
            throw ConfigError("scenario.edges: edge (" + std::to_string(index(h)) + "," +
                              std::to_string(index(u)) + ") references an unknown node");
        user_neighbors_[index(u)].push_back(h);
        helper_neighbors_[index(h)].push_back(u);
    }
    for (auto& n : helper_neighbors_)
        std::sort(n.begin(), n.end());
    for (std::size_t u = 0; u < users_.size(); ++u) {
        if (user_neighbors_[u].empty())
            throw ConfigError("scenario.edges: user " + std::to_string(u) + " has no neighboring helper");
    }
}

bool Topology::connected(HelperId h, UserId u) const
{
    const auto n = users_of(h);
    return std::binary_search(n.begin(), n.end(), u);
}

namespace {

Position uniform_position(double area_m, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> coord(0.0, area_m);
    const double x = coord(rng);
    const double y = coord(rng);
    return {x, y};
}

std::vector<double> compute_gains(const Topology& topo, std::span<const Position> users,
                                  const PathLossParams& path_loss)
{
    std::vector<double> gains(topo.num_helpers() * topo.num_users());
    for (std::size_t h = 0; h < topo.num_helpers(); ++h)
        for (std::size_t u = 0; u < topo.num_users(); ++u)
            gains[h * topo.num_users() + u] =
                path_gain(distance(topo.helpers()[h].position, users[u]), path_loss);
    return gains;
}

} // namespace

Topology build_topology(const ScenarioConfig& config)
{
    if (config.num_helpers < 1)
        throw ConfigError("scenario.helpers: at least one helper is required");
    if (config.num_users < 1)
        throw ConfigError("scenario.users: at least one user is required");
    if (!(config.area_m > 0.0))
        throw ConfigError("scenario.area_m: must be positive");
    if (!config.helper_positions.empty() && config.helper_positions.size() != config.num_helpers)
        throw ConfigError("scenario.helper_positions: expected " + std::to_string(config.num_helpers) + " entries");
    if (!config.user_positions.empty() && config.user_positions.size() != config.num_users)
        throw ConfigError("scenario.user_positions: expected " + std::to_string(config.num_users) + " entries");
    if (!config.helper_powers.empty() && config.helper_powers.size() != config.num_helpers)
        throw ConfigError("scenario.powers: expected " + std::to_string(config.num_helpers) + " entries");

    std::vector<HelperNode> helpers;
    for (std::size_t h = 0; h < config.num_helpers; ++h) {
        HelperNode node;
        node.id = helper_id(h);
        node.position = config.helper_positions.empty()
                            ? Position{config.area_m * (static_cast<double>(h) + 0.5) /
                                           static_cast<double>(config.num_helpers),
                                       config.area_m / 2.0}
                            : config.helper_positions[h];
        node.power = config.helper_powers.empty() ? config.helper_power : config.helper_powers[h];
        node.antennas = config.antennas;
        helpers.push_back(node);
    }

    std::mt19937_64 rng(config.seed);
    std::vector<UserNode> users;
    for (std::size_t u = 0; u < config.num_users; ++u) {
        const Position p = config.user_positions.empty() ? uniform_position(config.area_m, rng)
                                                         : config.user_positions[u];
        users.push_back({user_id(u), p});
    }

    std::vector<std::pair<HelperId, UserId>> edges;
    switch (config.edge_rule) {
    case EdgeRule::all_pairs:
        for (std::size_t h = 0; h < helpers.size(); ++h)
            for (std::size_t u = 0; u < users.size(); ++u)
                edges.emplace_back(helper_id(h), user_id(u));
        break;
    case EdgeRule::distance_threshold:
        for (std::size_t h = 0; h < helpers.size(); ++h)
            for (std::size_t u = 0; u < users.size(); ++u)
                if (distance(helpers[h].position, users[u].position) <= config.edge_threshold_m)
                    edges.emplace_back(helper_id(h), user_id(u));
        break;
    case EdgeRule::explicit_list:
        for (auto [h, u] : config.explicit_edges)
            edges.emplace_back(helper_id(h), user_id(u));
        break;
    }

    return Topology(std::move(helpers), std::move(users), std::move(edges));
}

NetworkState initial_state(const Topology& topo, const PathLossParams& path_loss,
                           const MobilityParams& mobility, double area_m, std::mt19937_64& rng)
{
    NetworkState state;
    state.slot = 1;
    state.num_helpers = topo.num_helpers();
    state.num_users = topo.num_users();
    for (const auto& u : topo.users())
        state.user_positions.push_back(u.position);
    if (mobility.mode == MobilityMode::waypoint)
        for (std::size_t u = 0; u < topo.num_users(); ++u)
            state.waypoints.push_back(uniform_position(area_m, rng));
    state.gains = compute_gains(topo, state.user_positions, path_loss);
    return state;
}

NetworkState advance_state(const NetworkState& state, const Topology& topo,
                           const MobilityParams& mobility, const PathLossParams& path_loss,
                           double area_m, std::mt19937_64& rng)
{
    NetworkState next = state;
    next.slot = state.slot + 1;
    if (mobility.mode == MobilityMode::static_positions)
        return next;

    const double step = mobility.speed_mps * mobility.slot_seconds;
    if (step <= 0.0)
        return next;

    if (next.waypoints.size() != next.user_positions.size())
        next.waypoints.resize(next.user_positions.size(), Position{});
    for (std::size_t u = 0; u < next.user_positions.size(); ++u) {
        Position& p = next.user_positions[u];
        Position& w = next.waypoints[u];
        const double remaining = distance(p, w);
        if (remaining <= step) {
            p = w;
            w = uniform_position(area_m, rng);
        } else {
            p.x += (w.x - p.x) * step / remaining;
            p.y += (w.y - p.y) * step / remaining;
        }
    }
    next.gains = compute_gains(topo, next.user_positions, path_loss);
    return next;
}

} // namespace pullstream
