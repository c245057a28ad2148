#pragma once

#include "pullstream/scenario.hpp"
#include "pullstream/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace pullstream {

struct RateParams {
    int antennas = 10;   // M
    int max_active = 5;  // S_max, 1 <= S_max <= M
};

/// One helper's transmission decision for a slot.
struct ScheduleDecision {
    HelperId helper{};
    std::vector<UserId> active;                    // ascending ids
    std::vector<std::pair<UserId, double>> rates;  // every u in N(h), bits/channel symbol
    double weighted_sum = 0.0;                     // sum of weight * rate over the active set

    double rate_of(UserId u) const;
};

/// Interference seen by u when served by h: sum over h' != h of P_h' g_h'u.
/// Every other helper is treated as transmitting at full power.
double interference_at(UserId u, HelperId serving, const NetworkState& state, const Topology& topo);

/// Hardened zero-forcing rate of one user served in an active set of size S:
/// log2(1 + g (M - S + 1) P / (S (1 + I))), or 0 for non-members.
/// Throws std::domain_error unless 1 <= S <= M.
double zf_rate(double gain, int antennas, int subset_size, double power, double interference,
               bool member = true);

/// Single-antenna rate log2(1 + g P / (1 + I)).
double siso_rate(double gain, double power, double interference);

/// Max-weight MU-MIMO decision by sort+greedy over every subset size.
/// `weights` is indexed by user id over all users; only N(h) is read.
ScheduleDecision schedule_helper_mimo(HelperId h, std::span<const double> weights,
                                      const NetworkState& state, const Topology& topo,
                                      const RateParams& params);

/// Exhaustive search over every subset of N(h) of size <= min(S_max, M).
/// Refuses (std::invalid_argument) when |N(h)| > 20.
ScheduleDecision brute_force_schedule(HelperId h, std::span<const double> weights,
                                      const NetworkState& state, const Topology& topo,
                                      const RateParams& params);

/// Single-antenna TDMA baseline: the whole slot goes to argmax_u Q_u C_hu.
ScheduleDecision schedule_helper_tdma(HelperId h, std::span<const double> weights,
                                      const NetworkState& state, const Topology& topo);

} // namespace pullstream
