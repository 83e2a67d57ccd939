#pragma once

#include <string>

#include "dualminer/event_log.hpp"
#include "dualminer/log_io.hpp"

namespace dualminer::testing {

// The motivating pair of logs, typed in canonical text form.
inline constexpr const char* kMotivatingPlus =
    "a,b,c^40\n"
    "b,d^40\n"
    "c,b,d^5\n"
    "b,d,c^5\n"
    "a,d,c,b^5\n"
    "a,c,d,b^5\n";

inline constexpr const char* kMotivatingMinus =
    "b,c,d^20\n"
    "b,d,c^20\n"
    "a,c,b,d^20\n"
    "d,b,c^20\n"
    "d,c,b^20\n";

inline EventLog motivating_plus() { return parse_log_text(kMotivatingPlus); }
inline EventLog motivating_minus() { return parse_log_text(kMotivatingMinus); }

inline std::string data_path(const std::string& name) { return std::string(DUALMINER_DATA_DIR) + "/" + name; }

inline EventLog log(const char* text) { return parse_log_text(text); }

}  // namespace dualminer::testing
