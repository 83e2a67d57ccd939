#include "dualminer/metrics.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace dualminer {
namespace {

void check_fitness(double fit_plus, double fit_minus) {
    if (!(fit_plus >= 0.0 && fit_plus <= 1.0) || !(fit_minus >= 0.0 && fit_minus <= 1.0))
        throw std::invalid_argument("fitness values must lie in [0, 1]");
}

double harmonic(double fit_plus, double fit_minus) {
    check_fitness(fit_plus, fit_minus);
    const double rejected = 1.0 - fit_minus;
    const double denom = fit_plus + rejected;
    if (denom == 0.0) return 0.0;
    return 2.0 * fit_plus * rejected / denom;
}

std::array<std::pair<const char*, double>, 9> fields(const MetricsReport& r) {
    return {{{"fit_align_plus", r.fit_align_plus},
             {"fit_align_minus", r.fit_align_minus},
             {"fit_trace_plus", r.fit_trace_plus},
             {"fit_trace_minus", r.fit_trace_minus},
             {"prc_plus", r.prc_plus},
             {"acc_align", r.acc_align},
             {"acc_trace", r.acc_trace},
             {"f1_align", r.f1_align},
             {"f1_trace", r.f1_trace}}};
}

}  // namespace

double acc_align(double fit_plus, double fit_minus) {
    check_fitness(fit_plus, fit_minus);
    return fit_plus - fit_minus;
}

double acc_trace(double fit_plus, double fit_minus) { return acc_align(fit_plus, fit_minus); }

double f1_align(double fit_plus, double fit_minus) { return harmonic(fit_plus, fit_minus); }

double f1_trace(double fit_plus, double fit_minus) { return harmonic(fit_plus, fit_minus); }

MetricsReport evaluate(const EventLog& log_plus, const EventLog& log_minus, const PetriNet& net,
                       const ConformanceOptions& options) {
    if (log_plus.empty() || log_minus.empty()) throw std::invalid_argument("evaluation needs two non-empty logs");
    const auto plus = replay(log_plus, net, options);
    const auto minus = replay(log_minus, net, options);
    MetricsReport r;
    r.fit_align_plus = plus.align_fitness;
    r.fit_align_minus = minus.align_fitness;
    r.fit_trace_plus = plus.trace_fitness;
    r.fit_trace_minus = minus.trace_fitness;
    r.prc_plus = etc_precision(log_plus, net, options.state_budget);
    r.acc_align = acc_align(r.fit_align_plus, r.fit_align_minus);
    r.acc_trace = acc_trace(r.fit_trace_plus, r.fit_trace_minus);
    r.f1_align = f1_align(r.fit_align_plus, r.fit_align_minus);
    r.f1_trace = f1_trace(r.fit_trace_plus, r.fit_trace_minus);
    return r;
}

std::string format_g6(double value) {
    if (value == 0.0) value = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string metrics_csv_header() {
    std::string out;
    for (const auto& [name, value] : fields(MetricsReport{})) {
        if (!out.empty()) out += ',';
        out += name;
    }
    return out;
}

std::string metrics_csv_row(const MetricsReport& report) {
    std::string out;
    bool first = true;
    for (const auto& [name, value] : fields(report)) {
        if (!first) out += ',';
        out += format_g6(value);
        first = false;
    }
    return out;
}

std::string metrics_to_json(const MetricsReport& report) {
    std::string out = "{";
    bool first = true;
    for (const auto& [name, value] : fields(report)) {
        if (!first) out += ", ";
        out += '"';
        out += name;
        out += "\": ";
        out += format_g6(value);
        first = false;
    }
    return out + "}";
}

}  // namespace dualminer
