#pragma once

#include "pullstream/config.hpp"
#include "pullstream/scenario.hpp"
#include "pullstream/types.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace pullstream {

struct UserMetrics {
    UserId user{};
    double mean_quality = 0.0;      // mean D of requested chunks
    double prebuffer_seconds = 0.0; // T_u * T_gop; horizon * T_gop if playback never started
    bool started = false;
    double rebuffer_percentage = 0.0;
    std::int64_t stall_events = 0;
    double mean_backlog_bits = 0.0; // time average of end-of-slot Q_u
    double mean_theta = 0.0;        // time average of end-of-slot Theta_u
    std::int64_t chunks_requested = 0;
    std::int64_t chunks_delivered = 0;
    std::int64_t chunks_played = 0;
    /// Chunk indices in completion order.
    std::vector<std::int64_t> completion_order;
};

struct TraceRow {
    Slot slot = 0;
    UserId user{};
    Bits backlog = 0;
    double theta = 0.0;
};

struct MetricsReport {
    Slot horizon = 0;
    double gop_seconds = 0.5;
    std::vector<UserMetrics> users;
    double network_utility = 0.0;                 // sum_u phi(mean_quality_u)
    std::vector<Bits> total_backlog;              // sum_u Q_u at the end of each slot
    std::vector<Bits> max_backlog;                // max_u Q_u at the end of each slot
    std::vector<TraceRow> trace;                  // filled when run.trace is set
    std::vector<Position> user_positions;         // initial positions
    std::vector<Position> helper_positions;

    double mean_total_backlog() const;
    double mean_prebuffer_seconds() const;
    double mean_rebuffer_percentage() const;
    double mean_quality() const;
};

/// Per-run seeds derived from run.seed, one per random stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Runs the slotted control loop for run.horizon slots. Same config (and
/// seed) gives a bit-identical report.
MetricsReport run_simulation(const SimulationConfig& config);

/// Per-user metrics CSV: header, one row per user, one `all` summary row.
/// An empty report yields the header only.
void emit_metrics(const MetricsReport& report, const std::filesystem::path& path);

/// Per-slot queue trace CSV with columns slot,user,Q_u,Theta_u.
void emit_trace(const MetricsReport& report, const std::filesystem::path& path);

} // namespace pullstream
