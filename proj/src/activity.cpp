#include "dualminer/activity.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace dualminer {
namespace {

struct Interner {
    std::mutex mutex;
    // node-based container: element addresses stay valid across rehashes
    std::unordered_set<std::string> names;
};

Interner& interner() {
    static Interner instance;
    return instance;
}

}  // namespace

bool is_reserved_name(std::string_view name) noexcept { return name == kStartName || name == kEndName; }

Activity::Activity(std::string_view name) {
    if (name.empty()) throw std::invalid_argument("activity name must not be empty");
    if (is_reserved_name(name))
        throw std::invalid_argument("activity name '" + std::string(name) + "' is reserved");
    auto& table = interner();
    std::lock_guard lock(table.mutex);
    name_ = &*table.names.emplace(name).first;
}

}  // namespace dualminer
