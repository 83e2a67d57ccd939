#include "dualminer/event_log.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "dualminer/errors.hpp"

namespace dualminer {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string describe_instance(const Sequence& seq, const TraceContext* ctx, std::size_t instance) {
    if (ctx) {
        auto it = ctx->attributes.find("concept:name");
        if (it != ctx->attributes.end()) return "trace '" + attribute_to_string(it->second) + "'";
    }
    return "trace <" + sequence_to_string(seq) + "> (instance " + std::to_string(instance) + ")";
}

bool evaluate(const SplitPredicate& predicate, const Sequence& seq, const TraceContext* ctx, std::size_t instance) {
    return std::visit(
        [&](const auto& p) -> bool {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ActivityPresence>) {
                for (const auto& a : seq)
                    if (a == p.activity) return true;
                return false;
            } else if constexpr (std::is_same_v<P, DurationExceeds>) {
                if (!ctx || ctx->timestamps.empty() || !ctx->timestamps.front() || !ctx->timestamps.back())
                    throw PredicateError(describe_instance(seq, ctx, instance) +
                                         " lacks first/last timestamps required by a duration predicate");
                auto duration = *ctx->timestamps.back() - *ctx->timestamps.front();
                return duration > p.threshold;
            } else {
                if (!ctx) return false;
                auto it = ctx->attributes.find(p.key);
                return it != ctx->attributes.end() && attribute_to_string(it->second) == p.value;
            }
        },
        predicate);
}

}  // namespace

std::string attribute_to_string(const AttributeValue& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<V, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<V, Timestamp>) {
                return format_timestamp(v);
            } else if constexpr (std::is_same_v<V, double>) {
                std::ostringstream out;
                out << v;
                return out.str();
            } else {
                return std::to_string(v);
            }
        },
        value);
}

void EventLog::add(const Trace& trace) {
    std::vector<TraceContext> contexts;
    if (!trace.context.empty()) contexts.push_back(trace.context);
    add_variant(trace.activities, 1, std::move(contexts));
}

void EventLog::add(Sequence activities, std::size_t count) { add_variant(activities, count, {}); }

void EventLog::add_variant(const Sequence& activities, std::size_t count, std::vector<TraceContext> contexts) {
    if (count == 0) return;
    if (!contexts.empty() && contexts.size() != count)
        throw std::invalid_argument("context count must match multiplicity");
    auto& entry = variants_[activities];
    if (!contexts.empty() || !entry.contexts.empty()) {
        if (entry.contexts.empty()) entry.contexts.resize(entry.count);
        if (contexts.empty()) contexts.resize(count);
        for (auto& c : contexts) entry.contexts.push_back(std::move(c));
    }
    entry.count += count;
    total_ += count;
    alphabet_.insert(activities.begin(), activities.end());
}

std::size_t EventLog::count(const Sequence& activities) const {
    auto it = variants_.find(activities);
    return it == variants_.end() ? 0 : it->second.count;
}

bool operator==(const EventLog& a, const EventLog& b) {
    if (a.total_ != b.total_ || a.variants_.size() != b.variants_.size()) return false;
    auto ia = a.variants_.begin();
    for (auto ib = b.variants_.begin(); ib != b.variants_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second.count != ib->second.count) return false;
    return true;
}

EventLog project(const EventLog& log, const AlphabetSet& alphabet) {
    EventLog out;
    for (const auto& [seq, variant] : log) {
        Sequence kept;
        kept.reserve(seq.size());
        std::vector<std::size_t> positions;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (alphabet.contains(seq[i])) {
                kept.push_back(seq[i]);
                positions.push_back(i);
            }
        }
        std::vector<TraceContext> contexts;
        contexts.reserve(variant.contexts.size());
        for (const auto& ctx : variant.contexts) {
            TraceContext projected{ctx.attributes, {}};
            if (!ctx.timestamps.empty())
                for (auto p : positions) projected.timestamps.push_back(ctx.timestamps[p]);
            contexts.push_back(std::move(projected));
        }
        out.add_variant(kept, variant.count, std::move(contexts));
    }
    return out;
}

EventLog without_empty_traces(const EventLog& log) {
    EventLog out;
    for (const auto& [seq, variant] : log)
        if (!seq.empty()) out.add_variant(seq, variant.count, variant.contexts);
    return out;
}

SplitPredicate parse_split_predicate(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("split predicate needs a '<kind>:' prefix");
    auto kind = text.substr(0, colon);
    auto arg = text.substr(colon + 1);
    if (kind == "presence") return ActivityPresence{Activity(arg)};
    if (kind == "duration-gt") {
        auto d = parse_iso_duration(arg);
        if (!d) throw std::invalid_argument("bad ISO-8601 duration '" + std::string(arg) + "'");
        return DurationExceeds{*d};
    }
    if (kind == "attr") {
        auto eq = arg.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw std::invalid_argument("attribute predicate must look like attr:<key>=<value>");
        return AttributeEquals{std::string(arg.substr(0, eq)), std::string(arg.substr(eq + 1))};
    }
    throw std::invalid_argument("unknown split predicate kind '" + std::string(kind) + "'");
}

std::pair<EventLog, EventLog> split_by_predicate(const EventLog& log, const SplitPredicate& predicate) {
    EventLog yes;
    EventLog no;
    for (const auto& [seq, variant] : log) {
        if (variant.contexts.empty()) {
            (evaluate(predicate, seq, nullptr, 0) ? yes : no).add_variant(seq, variant.count, {});
            continue;
        }
        for (std::size_t i = 0; i < variant.contexts.size(); ++i)
            (evaluate(predicate, seq, &variant.contexts[i], i) ? yes : no).add_variant(seq, 1, {variant.contexts[i]});
    }
    return {std::move(yes), std::move(no)};
}

std::string sequence_to_string(const Sequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ',';
        out += seq[i].name();
    }
    return out;
}

std::string to_text(const EventLog& log) {
    std::string out;
    for (const auto& [seq, variant] : log) {
        out += sequence_to_string(seq);
        if (variant.count > 1 || seq.empty()) out += '^' + std::to_string(variant.count);
        out += '\n';
    }
    return out;
}

EventLog parse_log_text(std::string_view text) {
    EventLog log;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty()) continue;

        std::size_t count = 1;
        if (auto caret = line.rfind('^'); caret != std::string_view::npos) {
            auto digits = trim(line.substr(caret + 1));
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), count);
            if (ec != std::errc{} || ptr != digits.data() + digits.size() || count == 0)
                throw ParseError("bad multiplicity suffix", line_no, caret + 1);
            line = trim(line.substr(0, caret));
        }
        Sequence seq;
        while (!line.empty()) {
            auto comma = line.find(',');
            auto name = trim(line.substr(0, comma));
            if (name.empty()) throw ParseError("empty activity name", line_no);
            seq.emplace_back(name);
            line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);
        }
        log.add(std::move(seq), count);
    }
    return log;
}

}  // namespace dualminer
