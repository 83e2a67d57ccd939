#include "dualminer/time_util.hpp"

#include <cctype>
#include <cstdio>

namespace dualminer {
namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    // exactly `digits` decimal digits
    std::optional<int> fixed(int digits) {
        int value = 0;
        for (int i = 0; i < digits; ++i) {
            if (done() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) return std::nullopt;
            value = value * 10 + (text_[pos_++] - '0');
        }
        return value;
    }

    // one or more digits with an optional fraction; returns the value and whether digits were read
    std::optional<double> decimal() {
        std::size_t start = pos_;
        while (!done() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == ','))
            ++pos_;
        if (start == pos_) return std::nullopt;
        std::string chunk(text_.substr(start, pos_ - start));
        for (auto& c : chunk)
            if (c == ',') c = '.';
        try {
            std::size_t used = 0;
            double v = std::stod(chunk, &used);
            if (used != chunk.size()) return std::nullopt;
            return v;
        } catch (...) {
            return std::nullopt;
        }
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

    Cursor in(text);
    auto y = in.fixed(4);
    if (!y || !in.accept('-')) return std::nullopt;
    auto mo = in.fixed(2);
    if (!mo || !in.accept('-')) return std::nullopt;
    auto d = in.fixed(2);
    if (!d) return std::nullopt;
    year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;

    milliseconds time_of_day{0};
    minutes offset{0};
    if (!in.done()) {
        if (!in.accept('T') && !in.accept(' ')) return std::nullopt;
        auto h = in.fixed(2);
        if (!h || !in.accept(':')) return std::nullopt;
        auto mi = in.fixed(2);
        if (!mi) return std::nullopt;
        int s = 0;
        int ms = 0;
        if (in.accept(':')) {
            auto sec = in.fixed(2);
            if (!sec) return std::nullopt;
            s = *sec;
            if (in.accept('.')) {
                // keep millisecond precision, ignore further digits
                int scale = 100;
                int digits = 0;
                while (std::isdigit(static_cast<unsigned char>(in.peek()))) {
                    int digit = in.peek() - '0';
                    in.accept(in.peek());
                    if (digits++ < 3) {
                        ms += digit * scale;
                        scale /= 10;
                    }
                }
                if (digits == 0) return std::nullopt;
            }
        }
        if (*h > 23 || *mi > 59 || s > 60) return std::nullopt;
        time_of_day = hours{*h} + minutes{*mi} + seconds{s} + milliseconds{ms};

        if (in.accept('Z')) {
        } else if (in.peek() == '+' || in.peek() == '-') {
            int sign = in.peek() == '-' ? -1 : 1;
            in.accept(in.peek());
            auto oh = in.fixed(2);
            if (!oh) return std::nullopt;
            in.accept(':');
            auto om = in.fixed(2);
            if (!om) return std::nullopt;
            offset = minutes{sign * (*oh * 60 + *om)};
        }
        if (!in.done()) return std::nullopt;
    }
    return Timestamp{sys_days{ymd}.time_since_epoch() + time_of_day - offset};
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    auto day_point = floor<days>(t);
    year_month_day ymd{day_point};
    hh_mm_ss tod{t - day_point};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03d+00:00", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                  static_cast<int>(tod.seconds().count()), static_cast<int>(tod.subseconds().count()));
    return buf;
}

std::optional<std::chrono::milliseconds> parse_iso_duration(std::string_view text) {
    Cursor in(text);
    if (!in.accept('P')) return std::nullopt;
    double total_ms = 0.0;
    bool in_time = false;
    bool any = false;
    while (!in.done()) {
        if (in.accept('T')) {
            if (in_time) return std::nullopt;
            in_time = true;
            continue;
        }
        auto value = in.decimal();
        if (!value) return std::nullopt;
        char unit = in.peek();
        in.accept(unit);
        double scale = 0.0;
        if (!in_time) {
            if (unit == 'W') scale = 7.0 * 86400e3;
            else if (unit == 'D') scale = 86400e3;
            else return std::nullopt;  // Y and M are calendar-dependent
        } else {
            if (unit == 'H') scale = 3600e3;
            else if (unit == 'M') scale = 60e3;
            else if (unit == 'S') scale = 1e3;
            else return std::nullopt;
        }
        total_ms += *value * scale;
        any = true;
    }
    if (!any) return std::nullopt;
    return std::chrono::milliseconds{static_cast<long long>(total_ms + 0.5)};
}

}  // namespace dualminer
