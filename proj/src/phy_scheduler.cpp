#include "pullstream/phy_scheduler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pullstream {

double ScheduleDecision::rate_of(UserId u) const
{
    for (const auto& [user, rate] : rates)
        if (user == u)
            return rate;
    return 0.0;
}

double interference_at(UserId u, HelperId serving, const NetworkState& state, const Topology& topo)
{
    double total = 0.0;
    for (const auto& other : topo.helpers()) {
        if (other.id == serving)
            continue;
        total += other.power * state.gain(other.id, u);
    }
    return total;
}

double zf_rate(double gain, int antennas, int subset_size, double power, double interference, bool member)
{
    if (subset_size < 1 || subset_size > antennas)
        throw std::domain_error("zf_rate: active set size " + std::to_string(subset_size) +
                                " outside [1, " + std::to_string(antennas) + "]");
    if (!member)
        return 0.0;
    const double s = static_cast<double>(subset_size);
    const double sinr = gain * (static_cast<double>(antennas) - s + 1.0) * power / (s * (1.0 + interference));
    return std::log2(1.0 + sinr);
}

double siso_rate(double gain, double power, double interference)
{
    return std::log2(1.0 + gain * power / (1.0 + interference));
}

namespace {

void check_params(const RateParams& params)
{
    if (params.antennas < 1)
        throw std::domain_error("antennas must be >= 1");
    if (params.max_active < 1 || params.max_active > params.antennas)
        throw std::domain_error("max_active must lie in [1, antennas]");
}

struct Candidate {
    UserId user;
    double weight;
    double gain;
    double interference;
};

std::vector<Candidate> candidates_of(HelperId h, std::span<const double> weights, const NetworkState& state,
                                     const Topology& topo)
{
    std::vector<Candidate> out;
    for (UserId u : topo.users_of(h)) {
        const double w = weights[index(u)];
        if (w < 0.0)
            throw std::invalid_argument("scheduling weights must be >= 0");
        out.push_back({u, w, state.gain(h, u), interference_at(u, h, state, topo)});
    }
    return out;
}

ScheduleDecision make_decision(HelperId h, std::span<const Candidate> cands, std::vector<std::size_t> members,
                               double score, const RateParams& params, double power)
{
    ScheduleDecision d;
    d.helper = h;
    d.weighted_sum = score;
    const int size = static_cast<int>(members.size());
    std::sort(members.begin(), members.end());
    std::size_t next = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const bool member = next < members.size() && members[next] == i;
        double rate = 0.0;
        if (member) {
            rate = zf_rate(cands[i].gain, params.antennas, size, power, cands[i].interference, true);
            d.active.push_back(cands[i].user);
            ++next;
        }
        d.rates.emplace_back(cands[i].user, rate);
    }
    return d;
}

// Sum of weighted rates over `members` (ascending positions) at set size S.
// Both schedulers sum in the same order so equal subsets give equal scores.
double subset_score(std::span<const Candidate> cands, std::span<const std::size_t> members, const RateParams& params,
                    double power)
{
    const int size = static_cast<int>(members.size());
    double score = 0.0;
    for (std::size_t i : members)
        score += cands[i].weight *
                 zf_rate(cands[i].gain, params.antennas, size, power, cands[i].interference, true);
    return score;
}

bool lexicographically_less(std::span<const std::size_t> a, std::span<const std::size_t> b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

ScheduleDecision schedule_helper_mimo(HelperId h, std::span<const double> weights, const NetworkState& state,
                                      const Topology& topo, const RateParams& params)
{
    check_params(params);
    const auto cands = candidates_of(h, weights, state, topo);
    const double power = topo.helper(h).power;
    const int cap = std::min({params.max_active, params.antennas, static_cast<int>(cands.size())});

    std::vector<std::size_t> best_members;
    double best_score = 0.0;
    std::vector<std::size_t> order(cands.size());
    std::vector<double> weighted(cands.size());
    for (int size = 1; size <= cap; ++size) {
        for (std::size_t i = 0; i < cands.size(); ++i)
            weighted[i] = cands[i].weight *
                          zf_rate(cands[i].gain, params.antennas, size, power, cands[i].interference, true);
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Positions follow ascending user id, so the index breaks ties toward smaller ids.
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return weighted[a] != weighted[b] ? weighted[a] > weighted[b] : a < b;
        });
        std::vector<std::size_t> members(order.begin(), order.begin() + size);
        std::sort(members.begin(), members.end());
        const double score = subset_score(cands, members, params, power);
        if (score > best_score) {
            best_score = score;
            best_members = std::move(members);
        }
    }
    return make_decision(h, cands, std::move(best_members), best_score, params, power);
}

ScheduleDecision brute_force_schedule(HelperId h, std::span<const double> weights, const NetworkState& state,
                                      const Topology& topo, const RateParams& params)
{
    check_params(params);
    const auto cands = candidates_of(h, weights, state, topo);
    if (cands.size() > 20)
        throw std::invalid_argument("brute_force_schedule: |N(h)| = " + std::to_string(cands.size()) +
                                    " exceeds the limit of 20");
    const double power = topo.helper(h).power;
    const int cap = std::min({params.max_active, params.antennas, static_cast<int>(cands.size())});

    std::vector<std::size_t> best_members;
    double best_score = 0.0;
    std::vector<std::size_t> members;
    const std::uint32_t limit = std::uint32_t{1} << cands.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        if (std::popcount(mask) > cap)
            continue;
        members.clear();
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (mask & (std::uint32_t{1} << i))
                members.push_back(i);
        const double score = subset_score(cands, members, params, power);
        const bool better =
            score > best_score ||
            (score == best_score && score > 0.0 &&
             (members.size() < best_members.size() ||
              (members.size() == best_members.size() && lexicographically_less(members, best_members))));
        if (better) {
            best_score = score;
            best_members = members;
        }
    }
    return make_decision(h, cands, std::move(best_members), best_score, params, power);
}

ScheduleDecision schedule_helper_tdma(HelperId h, std::span<const double> weights, const NetworkState& state,
                                      const Topology& topo)
{
    const auto cands = candidates_of(h, weights, state, topo);
    const double power = topo.helper(h).power;

    ScheduleDecision d;
    d.helper = h;
    std::size_t best = cands.size();
    double best_rate = 0.0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const double rate = siso_rate(cands[i].gain, power, cands[i].interference);
        const double score = cands[i].weight * rate;
        if (score > d.weighted_sum) {
            d.weighted_sum = score;
            best = i;
            best_rate = rate;
        }
    }
    for (std::size_t i = 0; i < cands.size(); ++i)
        d.rates.emplace_back(cands[i].user, i == best ? best_rate : 0.0);
    if (best < cands.size())
        d.active.push_back(cands[best].user);
    return d;
}

} // namespace pullstream
