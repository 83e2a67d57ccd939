#include "dualminer/log_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "dualminer/errors.hpp"
#include "xml_sax.hpp"

namespace dualminer {
namespace {

class XesHandler : public xml::SaxHandler {
public:
    EventLog log;

    void start(std::string_view name, const xml::AttributeMap& atts) override {
        ++depth_;
        if (depth_ == 1) {
            if (name != "log") throw SchemaError("XES root element must be <log>, found <" + std::string(name) + ">");
            return;
        }
        if (depth_ == 2 && name == "trace") {
            in_trace_ = true;
            trace_ = Trace{};
            return;
        }
        if (in_trace_ && depth_ == 3 && name == "event") {
            in_event_ = true;
            event_name_.reset();
            event_time_.reset();
            return;
        }
        if (in_event_ && depth_ == 4) {
            read_event_attribute(name, atts);
        } else if (in_trace_ && !in_event_ && depth_ == 3) {
            read_trace_attribute(name, atts);
        }
    }

    void end(std::string_view name) override {
        if (in_event_ && depth_ == 3 && name == "event") {
            in_event_ = false;
            if (!event_name_)
                throw SchemaError("event " + std::to_string(trace_.activities.size()) + " of trace index " +
                                  std::to_string(trace_index_) + " has no concept:name attribute");
            try {
                trace_.activities.emplace_back(*event_name_);
            } catch (const std::invalid_argument& e) {
                throw SchemaError("trace index " + std::to_string(trace_index_) + ": " + e.what());
            }
            trace_.context.timestamps.push_back(event_time_);
        } else if (in_trace_ && depth_ == 2 && name == "trace") {
            in_trace_ = false;
            auto& ts = trace_.context.timestamps;
            if (std::none_of(ts.begin(), ts.end(), [](const auto& t) { return t.has_value(); })) ts.clear();
            log.add(trace_);
            ++trace_index_;
        }
        --depth_;
    }

private:
    static const std::string* value_of(const xml::AttributeMap& atts, std::string_view key) {
        auto it = atts.find(key);
        return it == atts.end() ? nullptr : &it->second;
    }

    void read_event_attribute(std::string_view type, const xml::AttributeMap& atts) {
        const auto* key = value_of(atts, "key");
        const auto* value = value_of(atts, "value");
        if (!key || !value) return;
        if (*key == "concept:name" && type == "string") {
            event_name_ = *value;
        } else if (*key == "time:timestamp" && type == "date") {
            auto t = parse_timestamp(*value);
            if (!t)
                throw SchemaError("trace index " + std::to_string(trace_index_) + ": bad time:timestamp '" + *value +
                                  "'");
            event_time_ = *t;
        }
    }

    void read_trace_attribute(std::string_view type, const xml::AttributeMap& atts) {
        const auto* key = value_of(atts, "key");
        const auto* value = value_of(atts, "value");
        if (!key || !value) return;
        auto& attributes = trace_.context.attributes;
        if (type == "string" || type == "id") {
            attributes[*key] = *value;
        } else if (type == "int") {
            attributes[*key] = static_cast<std::int64_t>(std::stoll(*value));
        } else if (type == "float") {
            attributes[*key] = std::stod(*value);
        } else if (type == "boolean") {
            attributes[*key] = (*value == "true");
        } else if (type == "date") {
            if (auto t = parse_timestamp(*value)) attributes[*key] = *t;
            else attributes[*key] = *value;
        }
    }

    int depth_ = 0;
    bool in_trace_ = false;
    bool in_event_ = false;
    std::size_t trace_index_ = 0;
    Trace trace_;
    std::optional<std::string> event_name_;
    std::optional<Timestamp> event_time_;
};

void write_attribute(std::ostringstream& out, const std::string& indent, const std::string& key,
                     const AttributeValue& value) {
    const char* type = std::visit(
        [](const auto& v) -> const char* {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::string>) return "string";
            else if constexpr (std::is_same_v<V, std::int64_t>) return "int";
            else if constexpr (std::is_same_v<V, double>) return "float";
            else if constexpr (std::is_same_v<V, bool>) return "boolean";
            else return "date";
        },
        value);
    out << indent << '<' << type << " key=\"" << xml::escape(key) << "\" value=\""
        << xml::escape(attribute_to_string(value)) << "\"/>\n";
}

void write_trace(std::ostringstream& out, const Sequence& seq, const TraceContext* ctx) {
    out << "  <trace>\n";
    if (ctx)
        for (const auto& [key, value] : ctx->attributes) write_attribute(out, "    ", key, value);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        out << "    <event>\n      <string key=\"concept:name\" value=\"" << xml::escape(seq[i].name()) << "\"/>\n";
        if (ctx && i < ctx->timestamps.size() && ctx->timestamps[i])
            out << "      <date key=\"time:timestamp\" value=\"" << format_timestamp(*ctx->timestamps[i]) << "\"/>\n";
        out << "    </event>\n";
    }
    out << "  </trace>\n";
}

// RFC 4180 style record splitter: quoted fields, doubled quotes, CRLF or LF.
class CsvReader {
public:
    CsvReader(std::string_view text, char delimiter) : text_(text), delimiter_(delimiter) {}

    bool next(std::vector<std::string>& fields) {
        fields.clear();
        if (pos_ >= text_.size()) return false;
        ++line_;
        record_line_ = line_;
        std::string field;
        bool quoted = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_++];
            if (quoted) {
                if (c == '"') {
                    if (pos_ < text_.size() && text_[pos_] == '"') {
                        field += '"';
                        ++pos_;
                    } else {
                        quoted = false;
                    }
                } else {
                    if (c == '\n') ++line_;
                    field += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == delimiter_) {
                fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n') {
                break;
            } else if (c != '\r') {
                field += c;
            }
        }
        if (quoted) throw ParseError("unterminated quoted CSV field", record_line_);
        fields.push_back(std::move(field));
        return true;
    }

    std::size_t record_line() const { return record_line_; }

private:
    std::string_view text_;
    char delimiter_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
    std::size_t record_line_ = 0;
};

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("CSV column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

EventLog parse_xes(std::string_view xml_text) {
    XesHandler handler;
    xml::parse(xml_text, handler);
    return std::move(handler.log);
}

std::string write_xes(const EventLog& log) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\">\n"
        << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n"
        << "  <extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
    for (const auto& [seq, variant] : log) {
        if (variant.contexts.empty()) {
            for (std::size_t i = 0; i < variant.count; ++i) write_trace(out, seq, nullptr);
        } else {
            for (const auto& ctx : variant.contexts) write_trace(out, seq, &ctx);
        }
    }
    out << "</log>\n";
    return out.str();
}

EventLog parse_csv(std::string_view text, const CsvConfig& config) {
    CsvReader reader(text, config.delimiter);
    std::vector<std::string> header;
    if (!reader.next(header)) throw ConfigError("CSV input has no header row");
    auto case_col = column_index(header, config.case_column);
    auto act_col = column_index(header, config.activity_column);
    std::optional<std::size_t> time_col;
    if (config.timestamp_column) time_col = column_index(header, *config.timestamp_column);

    struct Row {
        std::string activity;
        std::optional<Timestamp> time;
        std::size_t line;
    };
    std::vector<std::string> case_order;
    std::unordered_map<std::string, std::vector<Row>> cases;

    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        auto needed = std::max({case_col, act_col, time_col.value_or(0)});
        if (fields.size() <= needed)
            throw ParseError("row has " + std::to_string(fields.size()) + " fields, expected at least " +
                                 std::to_string(needed + 1),
                             reader.record_line());
        Row row{fields[act_col], std::nullopt, reader.record_line()};
        if (time_col) {
            row.time = parse_timestamp(fields[*time_col]);
            if (!row.time)
                throw ParseError("unparseable timestamp '" + fields[*time_col] + "' in row " +
                                     std::to_string(reader.record_line()),
                                 reader.record_line());
        }
        auto [it, inserted] = cases.try_emplace(fields[case_col]);
        if (inserted) case_order.push_back(fields[case_col]);
        it->second.push_back(std::move(row));
    }

    EventLog log;
    for (const auto& case_id : case_order) {
        auto& rows = cases[case_id];
        if (time_col)
            std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return *a.time < *b.time; });
        Trace trace;
        trace.context.attributes["concept:name"] = case_id;
        for (const auto& row : rows) {
            try {
                trace.activities.emplace_back(row.activity);
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string("row ") + std::to_string(row.line) + ": " + e.what(), row.line);
            }
            if (time_col) trace.context.timestamps.push_back(row.time);
        }
        log.add(trace);
    }
    return log;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

EventLog read_log_file(const std::filesystem::path& path, const CsvConfig& csv) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".xes") return parse_xes(read_file(path));
    if (ext == ".csv") return parse_csv(read_file(path), csv);
    throw ConfigError("unsupported log format '" + ext + "' (expected .xes or .csv)");
}

}  // namespace dualminer
