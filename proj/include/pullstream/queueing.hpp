#pragma once

#include "pullstream/types.hpp"

#include <cstdint>
#include <deque>
#include <vector>

namespace pullstream {

/// One requested chunk in a user's pull ledger.
struct ChunkRecord {
    FileId file{};
    std::int64_t index = 0;      // chunk index, 1-based
    int level = 1;
    double quality = 0.0;
    Bits total_bits = 0;
    Bits bits_remaining = 0;
    Slot request_slot = 0;
};

struct CompletedChunk {
    std::int64_t index = 0;
    int level = 1;
    double quality = 0.0;
    Slot request_slot = 0;
};

/// Thrown when a chunk would enter the ledger out of playback order.
class SequencingError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Per-user request queue: the scalar backlog Q_u together with the FIFO list
/// of requested chunks it accounts for. Service drains the head of line, so
/// chunks complete strictly in index order.
class RequestQueue {
public:
    /// Appends the next chunk. Its index must be one past the last enqueued
    /// index (the first chunk may have any index >= 1).
    void enqueue(ChunkRecord record);

    /// Consumes up to `bits` from the head of line and returns the chunks that
    /// completed, in order. Service beyond the ledger is discarded.
    std::vector<CompletedChunk> serve(Bits bits);

    Bits backlog() const { return backlog_; }
    Bits bits_arrived() const { return arrived_; }
    Bits bits_served() const { return served_; }
    std::int64_t last_enqueued() const { return last_index_; }
    const std::deque<ChunkRecord>& ledger() const { return ledger_; }
    bool empty() const { return ledger_.empty(); }

private:
    std::deque<ChunkRecord> ledger_;
    Bits backlog_ = 0;
    Bits arrived_ = 0;
    Bits served_ = 0;
    std::int64_t last_index_ = 0;
};

/// Scalar form of the backlog recursion, max{Q - served + arrival, 0}.
Bits next_backlog(Bits backlog, Bits served, Bits arrival);

/// Virtual queue Theta_u in quality units.
struct VirtualQueue {
    double value = 0.0;
};

/// Theta' = max{Theta + gamma - delivered, 0}.
VirtualQueue update_virtual_queue(VirtualQueue theta, double gamma, double delivered);

} // namespace pullstream
