#pragma once

#include <string>

#include "dualminer/conformance.hpp"
#include "dualminer/event_log.hpp"
#include "dualminer/petri.hpp"

namespace dualminer {

/// Conformance of one model against a desirable and an undesirable log.
/// Precision is measured against the desirable log only.
struct MetricsReport {
    double fit_align_plus = 0.0;
    double fit_align_minus = 0.0;
    double fit_trace_plus = 0.0;
    double fit_trace_minus = 0.0;
    double prc_plus = 0.0;
    double acc_align = 0.0;
    double acc_trace = 0.0;
    double f1_align = 0.0;
    double f1_trace = 0.0;
};

// Dual-log scores from fitness values in [0, 1]; std::invalid_argument otherwise.

/// fit_plus - fit_minus
double acc_align(double fit_plus, double fit_minus);
double acc_trace(double fit_plus, double fit_minus);

/// Harmonic mean of fit_plus and (1 - fit_minus); 0 when both are 0.
double f1_align(double fit_plus, double fit_minus);
double f1_trace(double fit_plus, double fit_minus);

/// Both logs must be non-empty.
MetricsReport evaluate(const EventLog& log_plus, const EventLog& log_minus, const PetriNet& net,
                       const ConformanceOptions& options = {});

/// Column names in report order.
std::string metrics_csv_header();
/// One row, `%.6g` per field, no trailing newline.
std::string metrics_csv_row(const MetricsReport& report);
/// `{"fit_align_plus": ..., ...}` with fields in report order.
std::string metrics_to_json(const MetricsReport& report);

/// Formats a value with 6 significant digits and `.` as decimal separator.
std::string format_g6(double value);

}  // namespace dualminer
