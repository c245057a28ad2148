#include "pullstream/playback.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pullstream {

Slot window_max_delay(std::span<const DeliveryRecord> log, Slot t, Slot window, Slot fallback)
{
    const Slot first = t - window + 1;
    bool any = false;
    Slot worst = 0;
    for (auto it = log.rbegin(); it != log.rend() && it->arrival_slot >= first; ++it) {
        if (it->arrival_slot > t)
            continue;
        any = true;
        worst = std::max(worst, it->delay());
    }
    return std::max<Slot>(1, any ? worst : fallback);
}

PlaybackSession::PlaybackSession(std::int64_t total_chunks, BufferingParams params)
    : total_(total_chunks), params_(params)
{
    if (total_ < 1)
        throw std::invalid_argument("playback: total_chunks must be >= 1");
    if (params_.window < 1)
        throw ConfigError("playback.window: must be >= 1");
    if (!(params_.threshold > 0.0))
        throw ConfigError("playback.threshold: must be > 0");
}

void PlaybackSession::step(Slot t, std::span<const CompletedChunk> arrivals)
{
    if (t <= last_slot_)
        throw std::invalid_argument("playback: slots must increase");
    last_slot_ = t;

    if (phase_ == PlaybackPhase::playing) {
        if (buffer_ > 0) {
            --buffer_;
            ++played_;
        } else {
            ++stall_events_;
            ++stall_slots_;
            phase_ = PlaybackPhase::buffering;
        }
    } else if (phase_ == PlaybackPhase::buffering && start_slot_) {
        ++stall_slots_;
    }

    for (const auto& c : arrivals) {
        const std::int64_t expected = log_.empty() ? c.index : log_.back().index + 1;
        if (c.index != expected)
            throw std::invalid_argument("playback: chunk " + std::to_string(c.index) + " arrived out of order");
        if (t < c.request_slot)
            throw std::invalid_argument("playback: chunk arrived before it was requested");
        log_.push_back({c.index, c.request_slot, t});
        ++buffer_;
        ++delivered_;
    }

    estimate_ = window_max_delay(log_, t, params_.window, estimate_);

    if (played_ == total_) {
        phase_ = PlaybackPhase::finished;
        return;
    }
    if (phase_ == PlaybackPhase::buffering) {
        const bool all_arrived = delivered_ == total_;
        if (static_cast<double>(buffer_) >= params_.threshold * static_cast<double>(estimate_) || all_arrived) {
            phase_ = PlaybackPhase::playing;
            if (!start_slot_)
                start_slot_ = t;
        }
    }
}

double PlaybackSession::rebuffering_percentage() const
{
    return 100.0 * static_cast<double>(stall_slots_) / static_cast<double>(total_);
}

} // namespace pullstream
