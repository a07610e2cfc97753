#pragma once

#include <charconv>
#include <string>

namespace nr2 {

/// Shortest round-trip decimal form of a double. Deterministic for a given
/// value, so repeated runs emit byte-identical output.
inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace nr2
