#include "pullstream/config.hpp"
#include "pullstream/phy_scheduler.hpp"
#include "pullstream/playback.hpp"
#include "pullstream/policy.hpp"
#include "pullstream/queueing.hpp"
#include "pullstream/scenario.hpp"
#include "pullstream/simulation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace pullstream;

namespace {

std::vector<LevelProfile> to_profile(const std::vector<std::pair<double, double>>& levels)
{
    std::vector<LevelProfile> out;
    for (std::size_t m = 0; m < levels.size(); ++m)
        out.push_back({static_cast<int>(m) + 1, levels[m].first, levels[m].second});
    return out;
}

// One helper serving every user, gains given per user, constant interference per user.
struct Cell {
    Topology topo;
    NetworkState state;
};

Cell single_cell(const std::vector<double>& gains, double power, int antennas)
{
    std::vector<HelperNode> helpers{{helper_id(0), {}, power, antennas}};
    std::vector<UserNode> users;
    std::vector<std::pair<HelperId, UserId>> edges;
    for (std::size_t u = 0; u < gains.size(); ++u) {
        users.push_back({user_id(u), {}});
        edges.emplace_back(helper_id(0), user_id(u));
    }
    NetworkState state;
    state.num_helpers = 1;
    state.num_users = gains.size();
    state.gains = gains;
    return {Topology(std::move(helpers), std::move(users), std::move(edges)), std::move(state)};
}

py::dict decision_dict(const ScheduleDecision& d)
{
    py::list active;
    for (UserId u : d.active)
        active.append(index(u));
    py::list rates;
    for (const auto& [u, r] : d.rates)
        rates.append(r);
    py::dict out;
    out["active"] = active;
    out["rates"] = rates;
    out["weighted_sum"] = d.weighted_sum;
    return out;
}

template <typename F>
py::dict schedule(F fn, const std::vector<double>& gains, const std::vector<double>& weights, double power,
                  int antennas, int max_active)
{
    if (gains.size() != weights.size())
        throw std::invalid_argument("gains and weights must have the same length");
    const Cell cell = single_cell(gains, power, antennas);
    return decision_dict(fn(helper_id(0), weights, cell.state, cell.topo, RateParams{antennas, max_active}));
}

py::dict report_dict(const MetricsReport& r)
{
    py::list users;
    for (const auto& u : r.users) {
        py::dict d;
        d["user"] = index(u.user);
        d["mean_quality"] = u.mean_quality;
        d["prebuffer_s"] = u.prebuffer_seconds;
        d["started"] = u.started;
        d["rebuffer_pct"] = u.rebuffer_percentage;
        d["stall_events"] = u.stall_events;
        d["avg_Q_bits"] = u.mean_backlog_bits;
        d["avg_Theta"] = u.mean_theta;
        d["chunks_requested"] = u.chunks_requested;
        d["chunks_delivered"] = u.chunks_delivered;
        d["chunks_played"] = u.chunks_played;
        d["completion_order"] = u.completion_order;
        users.append(d);
    }
    py::dict out;
    out["horizon"] = r.horizon;
    out["users"] = users;
    out["network_utility"] = r.network_utility;
    out["total_backlog"] = r.total_backlog;
    out["max_backlog"] = r.max_backlog;
    out["mean_quality"] = r.mean_quality();
    out["mean_prebuffer_s"] = r.mean_prebuffer_seconds();
    out["mean_rebuffer_pct"] = r.mean_rebuffer_percentage();
    out["mean_total_backlog"] = r.mean_total_backlog();
    return out;
}

} // namespace

PYBIND11_MODULE(_pullstream, m)
{
    m.doc() = "Pull-based adaptive video streaming simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SequencingError>(m, "SequencingError", PyExc_RuntimeError);

    m.def("path_gain", [](double d, double d0, double exponent) { return path_gain(d, {d0, exponent}); },
          py::arg("distance_m"), py::arg("reference_distance_m") = 40.0, py::arg("exponent") = 3.5);
    m.def("zf_rate", &zf_rate, py::arg("gain"), py::arg("antennas"), py::arg("subset_size"), py::arg("power"),
          py::arg("interference"), py::arg("member") = true);
    m.def("siso_rate", &siso_rate, py::arg("gain"), py::arg("power"), py::arg("interference"));

    m.def(
        "select_quality",
        [](double backlog, double theta, const std::vector<std::pair<double, double>>& levels,
           double pixels_per_chunk) {
            return select_quality(backlog, theta, to_profile(levels), pixels_per_chunk);
        },
        py::arg("backlog"), py::arg("theta"), py::arg("levels"), py::arg("pixels_per_chunk"),
        "levels: list of (bits_per_pixel, quality) in ascending level order. Returns the 1-based level.");
    m.def(
        "choose_auxiliary",
        [](double theta, double v, double d_min, double d_max, const std::string& utility) {
            return choose_auxiliary(theta, v, {d_min, d_max}, utility_from_name(utility));
        },
        py::arg("theta"), py::arg("V"), py::arg("d_min"), py::arg("d_max"), py::arg("utility") = "log");
    m.def(
        "update_virtual_queue",
        [](double theta, double gamma, double delivered) {
            return update_virtual_queue({theta}, gamma, delivered).value;
        },
        py::arg("theta"), py::arg("gamma"), py::arg("delivered"));
    m.def("next_backlog", &next_backlog, py::arg("backlog"), py::arg("served"), py::arg("arrival"));
    m.def(
        "window_max_delay",
        [](const std::vector<std::tuple<Slot, Slot>>& deliveries, Slot t, Slot window, Slot fallback) {
            std::vector<DeliveryRecord> log;
            std::int64_t i = 0;
            for (const auto& [requested, arrived] : deliveries)
                log.push_back({++i, requested, arrived});
            return window_max_delay(log, t, window, fallback);
        },
        py::arg("deliveries"), py::arg("t"), py::arg("window"), py::arg("fallback") = 1,
        "deliveries: list of (request_slot, arrival_slot) ordered by arrival.");

    m.def(
        "schedule_mimo",
        [](const std::vector<double>& gains, const std::vector<double>& weights, double power, int antennas,
           int max_active) { return schedule(schedule_helper_mimo, gains, weights, power, antennas, max_active); },
        py::arg("gains"), py::arg("weights"), py::arg("power") = 1.0, py::arg("antennas") = 10,
        py::arg("max_active") = 5, "Sort+greedy decision for one helper serving every user without interference.");
    m.def(
        "brute_force_schedule",
        [](const std::vector<double>& gains, const std::vector<double>& weights, double power, int antennas,
           int max_active) { return schedule(brute_force_schedule, gains, weights, power, antennas, max_active); },
        py::arg("gains"), py::arg("weights"), py::arg("power") = 1.0, py::arg("antennas") = 10,
        py::arg("max_active") = 5);

    m.def(
        "run_simulation",
        [](const std::string& config_json) {
            const SimulationConfig cfg = parse_config(config_json);
            MetricsReport r;
            {
                py::gil_scoped_release release;
                r = run_simulation(cfg);
            }
            return report_dict(r);
        },
        py::arg("config_json"), "Runs a simulation from a JSON configuration string.");
    m.def(
        "run_to_csv",
        [](const std::string& config_json, const std::filesystem::path& path) {
            const SimulationConfig cfg = parse_config(config_json);
            py::gil_scoped_release release;
            emit_metrics(run_simulation(cfg), path);
        },
        py::arg("config_json"), py::arg("path"), "Runs a simulation and writes the metrics CSV.");
    m.def(
        "validate_config", [](const std::string& config_json) { (void)parse_config(config_json); },
        py::arg("config_json"));
}
