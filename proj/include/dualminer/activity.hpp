#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace dualminer {

/// Names reserved for the artificial start and end nodes of a directly-follows graph.
inline constexpr std::string_view kStartName = "__start__";
inline constexpr std::string_view kEndName = "__end__";

/// An interned activity label.
///
/// Two activities with the same name share one storage slot, so equality is a
/// pointer compare. Ordering is by name so that sets of activities iterate in a
/// stable, human-meaningful order across runs.
class Activity {
public:
    /// Interns `name`. Throws std::invalid_argument for an empty name or one of
    /// the reserved start/end names.
    explicit Activity(std::string_view name);

    const std::string& name() const noexcept { return *name_; }

    friend bool operator==(const Activity& a, const Activity& b) noexcept { return a.name_ == b.name_; }
    friend std::strong_ordering operator<=>(const Activity& a, const Activity& b) noexcept {
        if (a.name_ == b.name_) return std::strong_ordering::equal;
        return *a.name_ <=> *b.name_;
    }

    std::size_t hash() const noexcept { return std::hash<const void*>{}(name_); }

private:
    const std::string* name_;
};

bool is_reserved_name(std::string_view name) noexcept;

}  // namespace dualminer

template <>
struct std::hash<dualminer::Activity> {
    std::size_t operator()(const dualminer::Activity& a) const noexcept { return a.hash(); }
};
