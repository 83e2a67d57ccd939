#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dualminer/event_log.hpp"

namespace dualminer {

/// Reads the XES subset log → trace* → event*. Events need a `concept:name`
/// string attribute; `time:timestamp` is optional. Other extensions are ignored.
EventLog parse_xes(std::string_view xml);

/// Writes a minimal XES document (concept and time extensions only).
std::string write_xes(const EventLog& log);

struct CsvConfig {
    std::string case_column = "case";
    std::string activity_column = "activity";
    std::optional<std::string> timestamp_column;
    char delimiter = ',';
};

/// One trace per case id. Within a case, events are ordered by timestamp when
/// a timestamp column is configured, with file order as the tiebreak.
EventLog parse_csv(std::string_view text, const CsvConfig& config);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Dispatches on the extension: `.xes` or `.csv`.
EventLog read_log_file(const std::filesystem::path& path, const CsvConfig& csv = {});

}  // namespace dualminer
