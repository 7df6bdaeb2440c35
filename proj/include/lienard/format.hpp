#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace lienard {

/// Shortest decimal string that parses back to exactly v. Independent of the
/// global locale.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return {buf, ptr};
}

}  // namespace lienard
