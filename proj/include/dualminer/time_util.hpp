#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace dualminer {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses ISO-8601 date-times such as `2016-01-01T09:51:15.304+01:00`,
/// `2016-01-01 09:51:15` or `2016-01-01`. Missing offset means UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Formats as `YYYY-MM-DDTHH:MM:SS.mmm+00:00`.
std::string format_timestamp(Timestamp t);

/// Parses an ISO-8601 duration (`P14D`, `PT36H`, `P1W`, `P1DT2H30M15.5S`).
/// Years and months are rejected because they have no fixed length.
std::optional<std::chrono::milliseconds> parse_iso_duration(std::string_view text);

}  // namespace dualminer
