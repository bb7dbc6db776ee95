#ifndef MINIANT_FORMAT_HPP
#define MINIANT_FORMAT_HPP

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace miniant {

// Locale-independent decimal rendering/parsing. Every file format in this
// project goes through these, so output bytes do not depend on the host
// locale and identical inputs give identical artifacts.

inline std::string format_general(double v, int significant_digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                             significant_digits);
    return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int decimals) {
    char buf[512];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

// Shortest representation that parses back to the identical double.
inline std::string format_exact(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Strict parse: the whole field must be a number.
inline double parse_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

inline long parse_long(std::string_view s) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
}

} // namespace miniant

#endif
