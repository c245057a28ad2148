#pragma once

#include "pullstream/queueing.hpp"
#include "pullstream/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pullstream {

struct BufferingParams {
    Slot window = 20;        // Delta, slots
    double threshold = 2.0;  // xi
};

enum class PlaybackPhase { buffering, playing, finished };

struct DeliveryRecord {
    std::int64_t index = 0;
    Slot request_slot = 0;
    Slot arrival_slot = 0;
    Slot delay() const { return arrival_slot - request_slot; }
};

/// Largest delivery delay among chunks that arrived in [t - window + 1, t],
/// floored at one slot. With no arrival in the window, returns
/// max(1, fallback). The log must be ordered by arrival slot.
Slot window_max_delay(std::span<const DeliveryRecord> log, Slot t, Slot window, Slot fallback = 1);

/// Client playback buffer with adaptive pre-buffering and re-buffering.
///
/// Each slot applies Psi_t = max{Psi_{t-1} - 1{playing}, 0} + |a_t|. While
/// buffering, playback is (re)started once Psi_t >= xi * E_t, or once every
/// chunk of the file has arrived; consumption begins in the next slot. A
/// consumption attempt on an empty buffer is a stall: it counts one stall
/// slot and returns the client to buffering, where each further waiting slot
/// also counts as a stall slot.
class PlaybackSession {
public:
    PlaybackSession(std::int64_t total_chunks, BufferingParams params);

    /// Advances to slot t (strictly increasing, first call t >= 1) with the
    /// chunks completed during t, in index order.
    void step(Slot t, std::span<const CompletedChunk> arrivals);

    PlaybackPhase phase() const { return phase_; }
    std::int64_t buffer() const { return buffer_; }
    std::int64_t delivered() const { return delivered_; }
    std::int64_t played() const { return played_; }
    std::int64_t total_chunks() const { return total_; }

    /// Slot at which playback first started (T_u), if it has.
    std::optional<Slot> start_slot() const { return start_slot_; }
    std::int64_t stall_events() const { return stall_events_; }
    std::int64_t stall_slots() const { return stall_slots_; }
    Slot current_delay_estimate() const { return estimate_; }
    const std::vector<DeliveryRecord>& deliveries() const { return log_; }

    /// 100 * stall slots / total chunks.
    double rebuffering_percentage() const;

private:
    std::int64_t total_;
    BufferingParams params_;
    PlaybackPhase phase_ = PlaybackPhase::buffering;
    std::int64_t buffer_ = 0;
    std::int64_t delivered_ = 0;
    std::int64_t played_ = 0;
    std::optional<Slot> start_slot_;
    std::int64_t stall_events_ = 0;
    std::int64_t stall_slots_ = 0;
    Slot estimate_ = 1;
    Slot last_slot_ = 0;
    std::vector<DeliveryRecord> log_;
};

} // namespace pullstream
