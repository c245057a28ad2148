#include "pullstream/simulation.hpp"

#include "pullstream/phy_scheduler.hpp"
#include "pullstream/playback.hpp"
#include "pullstream/policy.hpp"
#include "pullstream/queueing.hpp"
#include "pullstream/video_model.hpp"

#include "pullstream/detail/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

namespace pullstream {

namespace {

template <typename F>
double mean_over_users(const MetricsReport& r, F field)
{
    if (r.users.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& u : r.users)
        sum += field(u);
    return sum / static_cast<double>(r.users.size());
}

struct UserRuntime {
    const VideoFile* file = nullptr;
    QualityBounds bounds;
    RequestQueue queue;
    VirtualQueue theta;
    PlaybackSession playback;
    double quality_sum = 0.0;
    double backlog_sum = 0.0;
    double theta_sum = 0.0;
    std::vector<std::int64_t> completion_order;
};

} // namespace

double MetricsReport::mean_total_backlog() const
{
    if (total_backlog.empty())
        return 0.0;
    const double sum = std::accumulate(total_backlog.begin(), total_backlog.end(), 0.0,
                                       [](double acc, Bits b) { return acc + static_cast<double>(b); });
    return sum / static_cast<double>(total_backlog.size());
}

double MetricsReport::mean_prebuffer_seconds() const
{
    return mean_over_users(*this, [](const UserMetrics& u) { return u.prebuffer_seconds; });
}

double MetricsReport::mean_rebuffer_percentage() const
{
    return mean_over_users(*this, [](const UserMetrics& u) { return u.rebuffer_percentage; });
}

double MetricsReport::mean_quality() const
{
    return mean_over_users(*this, [](const UserMetrics& u) { return u.mean_quality; });
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

MetricsReport run_simulation(const SimulationConfig& config)
{
    validate(config);
    MetricsReport report;
    report.horizon = config.run.horizon;
    report.gop_seconds = config.video.vbr.constants.gop_seconds;
    if (config.run.horizon == 0)
        return report;

    std::vector<VideoFile> library;
    if (config.video.traces.empty()) {
        library = generate_vbr_library(config.video.vbr, derive_seed(config.run.seed, 2));
    } else {
        for (std::size_t f = 0; f < config.video.traces.size(); ++f)
            library.push_back(import_trace(config.video.traces[f], file_id(f), config.video.vbr.constants));
    }

    ScenarioConfig scenario = config.scenario;
    scenario.antennas = config.policy.phy == PhyMode::mimo ? config.policy.antennas : 1;
    scenario.mobility.slot_seconds = config.video.vbr.constants.gop_seconds;
    if (!config.scenario_seed_fixed)
        scenario.seed = derive_seed(config.run.seed, 1);
    const Topology topo = build_topology(scenario);
    std::mt19937_64 mobility_rng(derive_seed(config.run.seed, 3));
    NetworkState state = initial_state(topo, scenario.path_loss, scenario.mobility, scenario.area_m, mobility_rng);

    for (const auto& h : topo.helpers())
        report.helper_positions.push_back(h.position);
    report.user_positions = state.user_positions;

    const UtilityFunction utility = utility_from_name(config.policy.utility);
    const RateParams rate_params{config.policy.antennas, config.policy.max_active};
    const double n = config.policy.symbols_per_slot;
    const double unit = config.policy.queue_unit_bits;

    std::vector<UserRuntime> users;
    users.reserve(topo.num_users());
    for (std::size_t u = 0; u < topo.num_users(); ++u) {
        const std::size_t f = config.video.assignment.empty() ? u % library.size() : config.video.assignment[u];
        const VideoFile& file = library[f];
        users.push_back(UserRuntime{&file, quality_bounds(file), {}, {},
                                    PlaybackSession(file.num_chunks(), config.playback), 0.0, 0.0, 0.0, {}});
    }

    std::vector<double> weights(users.size());
    std::vector<double> rates(users.size());
    report.total_backlog.reserve(static_cast<std::size_t>(config.run.horizon));
    report.max_backlog.reserve(static_cast<std::size_t>(config.run.horizon));

    for (Slot t = 1; t <= config.run.horizon; ++t) {
        if (t > 1)
            state = advance_state(state, topo, scenario.mobility, scenario.path_loss, scenario.area_m, mobility_rng);

        // Congestion control and auxiliary maximization, one chunk per user per slot.
        for (auto& user : users) {
            const VideoFile& file = *user.file;
            if (t > file.num_chunks())
                continue;
            const auto profile = chunk_profile(file, t);
            const int level = select_quality(static_cast<double>(user.queue.backlog()) / unit, user.theta.value,
                                             profile, file.pixels_per_chunk() / unit);
            const double quality = file.quality(t, level);
            ChunkRecord rec;
            rec.file = file.id();
            rec.index = t;
            rec.level = level;
            rec.quality = quality;
            rec.total_bits = file.chunk_bits(t, level);
            rec.request_slot = t;
            user.queue.enqueue(rec);
            const double gamma = choose_auxiliary(user.theta.value, config.policy.control_v, user.bounds, utility);
            user.theta = update_virtual_queue(user.theta, gamma, quality);
            user.quality_sum += quality;
        }

        // Transmission scheduling on the broadcast backlogs, helpers independently.
        for (std::size_t u = 0; u < users.size(); ++u)
            weights[u] = static_cast<double>(users[u].queue.backlog());
        std::fill(rates.begin(), rates.end(), 0.0);
        for (const auto& helper : topo.helpers()) {
            const ScheduleDecision d = config.policy.phy == PhyMode::mimo
                                           ? schedule_helper_mimo(helper.id, weights, state, topo, rate_params)
                                           : schedule_helper_tdma(helper.id, weights, state, topo);
            for (const auto& [u, r] : d.rates)
                rates[index(u)] += r;
        }

        // Service, completions and playback.
        Bits total = 0;
        Bits peak = 0;
        for (std::size_t u = 0; u < users.size(); ++u) {
            UserRuntime& user = users[u];
            const auto bits = static_cast<Bits>(std::floor(n * rates[u]));
            const auto completed = user.queue.serve(bits);
            for (const auto& c : completed)
                user.completion_order.push_back(c.index);
            user.playback.step(t, completed);

            const Bits q = user.queue.backlog();
            total += q;
            peak = std::max(peak, q);
            user.backlog_sum += static_cast<double>(q);
            user.theta_sum += user.theta.value;
            if (config.run.trace)
                report.trace.push_back({t, user_id(u), q, user.theta.value});
        }
        report.total_backlog.push_back(total);
        report.max_backlog.push_back(peak);
    }

    const auto horizon = static_cast<double>(config.run.horizon);
    for (std::size_t u = 0; u < users.size(); ++u) {
        UserRuntime& user = users[u];
        UserMetrics m;
        m.user = user_id(u);
        m.chunks_requested = std::min<std::int64_t>(config.run.horizon, user.file->num_chunks());
        m.chunks_delivered = user.playback.delivered();
        m.chunks_played = user.playback.played();
        m.mean_quality = m.chunks_requested > 0 ? user.quality_sum / static_cast<double>(m.chunks_requested) : 0.0;
        m.started = user.playback.start_slot().has_value();
        const Slot start = user.playback.start_slot().value_or(config.run.horizon);
        m.prebuffer_seconds = static_cast<double>(start) * report.gop_seconds;
        m.rebuffer_percentage = user.playback.rebuffering_percentage();
        m.stall_events = user.playback.stall_events();
        m.mean_backlog_bits = user.backlog_sum / horizon;
        m.mean_theta = user.theta_sum / horizon;
        m.completion_order = std::move(user.completion_order);
        if (m.chunks_requested > 0)
            report.network_utility += utility(m.mean_quality);
        report.users.push_back(std::move(m));
    }
    return report;
}

void emit_metrics(const MetricsReport& report, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write metrics file '" + path.string() + "'");
    using detail::format_double;
    out << "user,mean_quality,prebuffer_s,rebuffer_pct,avg_Q_bits,avg_Theta,stall_events\n";
    for (const auto& u : report.users)
        out << index(u.user) << ',' << format_double(u.mean_quality) << ',' << format_double(u.prebuffer_seconds)
            << ',' << format_double(u.rebuffer_percentage) << ',' << format_double(u.mean_backlog_bits) << ','
            << format_double(u.mean_theta) << ',' << u.stall_events << '\n';
    if (!report.users.empty()) {
        const double stalls = mean_over_users(report, [](const UserMetrics& u) {
            return static_cast<double>(u.stall_events);
        });
        out << "all," << format_double(report.mean_quality()) << ',' << format_double(report.mean_prebuffer_seconds())
            << ',' << format_double(report.mean_rebuffer_percentage()) << ','
            << format_double(mean_over_users(report, [](const UserMetrics& u) { return u.mean_backlog_bits; }))
            << ',' << format_double(mean_over_users(report, [](const UserMetrics& u) { return u.mean_theta; }))
            << ',' << format_double(stalls) << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed for metrics file '" + path.string() + "'");
}

void emit_trace(const MetricsReport& report, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write trace file '" + path.string() + "'");
    out << "slot,user,Q_u,Theta_u\n";
    for (const auto& row : report.trace)
        out << row.slot << ',' << index(row.user) << ',' << row.backlog << ','
            << detail::format_double(row.theta) << '\n';
    if (!out)
        throw std::runtime_error("write failed for trace file '" + path.string() + "'");
}

} // namespace pullstream
