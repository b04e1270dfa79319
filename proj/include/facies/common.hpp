#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <system_error>

namespace facies {

/// Base class for all errors raised by the library (I/O, numerical, data).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration errors (bad keys, out-of-range settings). Kept distinct so
/// the CLI can map them to their own exit code.
class ConfigError : public Error {
public:
    using Error::Error;
};

namespace detail {

// Shortest round-trip decimal representation. Used everywhere a double ends
// up in a CSV or text artifact so reruns are byte-identical.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_int(long long v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view s, double& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline bool parse_int(std::string_view s, long long& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

} // namespace detail
} // namespace facies
