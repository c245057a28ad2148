#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace pullstream {

// Dense zero-based identifiers. Comparison order is the id order used for
// every deterministic tie-break in the library.
enum class HelperId : std::uint32_t {};
enum class UserId : std::uint32_t {};
enum class FileId : std::uint32_t {};

constexpr std::size_t index(HelperId h) { return static_cast<std::size_t>(h); }
constexpr std::size_t index(UserId u) { return static_cast<std::size_t>(u); }
constexpr std::size_t index(FileId f) { return static_cast<std::size_t>(f); }

constexpr HelperId helper_id(std::size_t i) { return static_cast<HelperId>(i); }
constexpr UserId user_id(std::size_t i) { return static_cast<UserId>(i); }
constexpr FileId file_id(std::size_t i) { return static_cast<FileId>(i); }

/// Integer bit counts (queue backlogs, chunk sizes, served bits).
using Bits = std::int64_t;

/// Chunk-time slot index. Sessions start at slot 1.
using Slot = std::int64_t;

/// Raised for invalid configuration values. The message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pullstream
