#pragma once

// Locale-independent number formatting and parsing shared by the CSV writers
// and readers.

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

namespace pullstream::detail {

/// Shortest representation that parses back to the same double.
inline std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

template <typename T>
bool parse_number(std::string_view text, T& out)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
        text.remove_suffix(1);
    if (text.empty())
        return false;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

} // namespace pullstream::detail
