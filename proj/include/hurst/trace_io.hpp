#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "error.hpp"
#include "series.hpp"

namespace hurst {

enum class TraceFormat {
    Sizes, ///< one frame size (bytes) per line
    Timed, ///< timestamp_seconds,size_bytes per line
};

inline constexpr std::int64_t kMaxFrameSize = std::int64_t{1} << 20;

struct Trace {
    TimeSeries series;
    std::vector<double> timestamps; ///< empty for the sizes format
};

namespace detail {

inline std::string_view trim(std::string_view s) noexcept
{
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

template <typename T>
bool parse_full(std::string_view s, T& out) noexcept
{
    s = trim(s);
    if (s.empty()) {
        return false;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] inline void malformed(std::size_t line)
{
    throw InputError("malformed line " + std::to_string(line));
}

} // namespace detail

/// Reads a trace; blank lines and lines starting with '#' are ignored.
inline Trace load_trace(std::istream& in, TraceFormat format, std::string label = {})
{
    std::vector<double> sizes;
    std::vector<double> stamps;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view body = detail::trim(line);
        if (body.empty() || body.front() == '#') {
            continue;
        }
        std::string_view size_field = body;
        if (format == TraceFormat::Timed) {
            const auto comma = body.find(',');
            if (comma == std::string_view::npos) {
                detail::malformed(lineno);
            }
            double ts = 0.0;
            if (!detail::parse_full(body.substr(0, comma), ts) || !std::isfinite(ts)) {
                detail::malformed(lineno);
            }
            if (!stamps.empty() && ts < stamps.back()) {
                throw InputError("timestamp decreases at line " + std::to_string(lineno));
            }
            stamps.push_back(ts);
            size_field = body.substr(comma + 1);
        }
        std::int64_t size = 0;
        if (!detail::parse_full(size_field, size)) {
            detail::malformed(lineno);
        }
        if (size <= 0) {
            throw InputError("nonpositive size at line " + std::to_string(lineno));
        }
        if (size > kMaxFrameSize) {
            throw InputError("size exceeds 1048576 at line " + std::to_string(lineno));
        }
        sizes.push_back(static_cast<double>(size));
    }
    if (sizes.empty()) {
        throw InputError("empty trace");
    }
    return {TimeSeries(std::move(sizes), std::move(label)), std::move(stamps)};
}

/// `path` of "-" reads standard input.
inline Trace load_trace(const std::string& path, TraceFormat format, std::string label = {})
{
    if (path == "-") {
        return load_trace(std::cin, format, std::move(label));
    }
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    return load_trace(in, format, std::move(label));
}

inline TraceFormat parse_trace_format(std::string_view name)
{
    if (name == "sizes") {
        return TraceFormat::Sizes;
    }
    if (name == "timed") {
        return TraceFormat::Timed;
    }
    throw InputError("unknown trace format '" + std::string(name) + "'");
}

} // namespace hurst
