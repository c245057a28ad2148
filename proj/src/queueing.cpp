#include "pullstream/queueing.hpp"

#include <algorithm>
#include <string>

namespace pullstream {

void RequestQueue::enqueue(ChunkRecord record)
{
    if (record.total_bits <= 0)
        throw std::invalid_argument("chunk " + std::to_string(record.index) + " has non-positive size");
    if (record.index < 1)
        throw SequencingError("chunk index must be >= 1, got " + std::to_string(record.index));
    if (last_index_ != 0 && record.index != last_index_ + 1)
        throw SequencingError("chunk " + std::to_string(record.index) + " requested after chunk " +
                              std::to_string(last_index_) + "; chunks must be requested in order");
    record.bits_remaining = record.total_bits;
    backlog_ += record.total_bits;
    arrived_ += record.total_bits;
    last_index_ = record.index;
    ledger_.push_back(record);
}

std::vector<CompletedChunk> RequestQueue::serve(Bits bits)
{
    if (bits < 0)
        throw std::invalid_argument("served bits must be >= 0");
    std::vector<CompletedChunk> completed;
    Bits left = bits;
    while (left > 0 && !ledger_.empty()) {
        ChunkRecord& head = ledger_.front();
        const Bits take = std::min(left, head.bits_remaining);
        head.bits_remaining -= take;
        left -= take;
        served_ += take;
        if (head.bits_remaining == 0) {
            completed.push_back({head.index, head.level, head.quality, head.request_slot});
            ledger_.pop_front();
        }
    }
    backlog_ = next_backlog(backlog_, bits, 0);
    return completed;
}

Bits next_backlog(Bits backlog, Bits served, Bits arrival)
{
    return std::max<Bits>(backlog - served + arrival, 0);
}

VirtualQueue update_virtual_queue(VirtualQueue theta, double gamma, double delivered)
{
    return {std::max(theta.value + gamma - delivered, 0.0)};
}

} // namespace pullstream
