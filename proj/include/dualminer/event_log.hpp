#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dualminer/activity.hpp"
#include "dualminer/time_util.hpp"

namespace dualminer {

using Sequence = std::vector<Activity>;
using AlphabetSet = std::set<Activity>;

using AttributeValue = std::variant<std::string, std::int64_t, double, bool, Timestamp>;
using Attributes = std::map<std::string, AttributeValue, std::less<>>;

std::string attribute_to_string(const AttributeValue& value);

/// Per-instance data that is lost when identical activity sequences are merged:
/// trace-level attributes and event timestamps (one slot per event, or none at all).
struct TraceContext {
    Attributes attributes;
    std::vector<std::optional<Timestamp>> timestamps;

    bool empty() const noexcept { return attributes.empty() && timestamps.empty(); }
    friend bool operator==(const TraceContext&, const TraceContext&) = default;
};

struct Trace {
    Sequence activities;
    TraceContext context;
};

/// A finite multiset of traces.
///
/// Identical activity sequences are stored once with a multiplicity. The
/// per-instance contexts of a variant are kept (one per original trace) as
/// soon as any instance carries attributes or timestamps, so predicates can
/// still be evaluated trace by trace after merging.
class EventLog {
public:
    struct Variant {
        std::size_t count = 0;
        std::vector<TraceContext> contexts;  // empty, or exactly `count` entries
    };
    using VariantMap = std::map<Sequence, Variant>;

    EventLog() = default;

    void add(const Trace& trace);
    void add(Sequence activities, std::size_t count = 1);
    /// Adds `count` copies of a variant with the given contexts (may be empty).
    void add_variant(const Sequence& activities, std::size_t count, std::vector<TraceContext> contexts);

    const VariantMap& variants() const noexcept { return variants_; }
    auto begin() const noexcept { return variants_.begin(); }
    auto end() const noexcept { return variants_.end(); }

    std::size_t total_count() const noexcept { return total_; }
    std::size_t distinct_count() const noexcept { return variants_.size(); }
    bool empty() const noexcept { return total_ == 0; }
    const AlphabetSet& alphabet() const noexcept { return alphabet_; }

    std::size_t count(const Sequence& activities) const;

    /// Multiset equality over activity sequences; contexts are ignored.
    friend bool operator==(const EventLog& a, const EventLog& b);

private:
    VariantMap variants_;
    AlphabetSet alphabet_;
    std::size_t total_ = 0;
};

/// Restricts every trace to `alphabet`; traces that become empty are kept.
EventLog project(const EventLog& log, const AlphabetSet& alphabet);

/// Copy of `log` without its empty traces.
EventLog without_empty_traces(const EventLog& log);

// Split predicates

struct ActivityPresence {
    Activity activity;
};

/// Satisfied when last-event timestamp minus first-event timestamp exceeds `threshold`.
struct DurationExceeds {
    std::chrono::milliseconds threshold;
};

/// Satisfied when the trace attribute `key`, rendered as text, equals `value`.
struct AttributeEquals {
    std::string key;
    std::string value;
};

using SplitPredicate = std::variant<ActivityPresence, DurationExceeds, AttributeEquals>;

/// Parses `presence:<activity>`, `duration-gt:<ISO-8601 duration>` or `attr:<key>=<value>`.
SplitPredicate parse_split_predicate(std::string_view text);

/// Returns (satisfying, rest). Throws PredicateError for a duration predicate
/// on a trace without first/last timestamps.
std::pair<EventLog, EventLog> split_by_predicate(const EventLog& log, const SplitPredicate& predicate);

// Canonical text form: one variant per line, activities comma-separated,
// `^n` suffix for n > 1. The empty trace is written as `^n` (always with suffix).

std::string to_text(const EventLog& log);
EventLog parse_log_text(std::string_view text);

std::string sequence_to_string(const Sequence& seq);

}  // namespace dualminer
