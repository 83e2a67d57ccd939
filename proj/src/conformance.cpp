#include "dualminer/conformance.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "dualminer/errors.hpp"

namespace dualminer {
namespace {

struct StateKey {
    std::size_t position;
    Marking marking;
    friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept {
        return MarkingHash{}(k.marking) * 31 + k.position;
    }
};

struct SearchNode {
    StateKey key;
    std::size_t dist;
    std::size_t parent;
    AlignmentMove move;
    bool closed = false;
};

constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

}  // namespace

Alignment optimal_alignment(const Sequence& trace, const PetriNet& net, std::size_t state_budget) {
    if (net.initial_marking().size() != net.places().size()) throw std::invalid_argument("net has no initial marking");

    std::vector<SearchNode> nodes;
    std::unordered_map<StateKey, std::size_t, StateKeyHash> index;
    std::deque<std::size_t> queue;

    auto relax = [&](StateKey key, std::size_t dist, std::size_t parent, AlignmentMove move, bool zero_cost) {
        auto it = index.find(key);
        if (it != index.end()) {
            auto& existing = nodes[it->second];
            if (existing.closed || existing.dist <= dist) return;
            existing.dist = dist;
            existing.parent = parent;
            existing.move = std::move(move);
            zero_cost ? queue.push_front(it->second) : queue.push_back(it->second);
            return;
        }
        auto id = nodes.size();
        index.emplace(key, id);
        nodes.push_back({std::move(key), dist, parent, std::move(move), false});
        zero_cost ? queue.push_front(id) : queue.push_back(id);
    };

    relax({0, net.initial_marking()}, 0, kNoParent, {AlignmentMove::Kind::Silent, std::nullopt, std::nullopt}, true);
    std::size_t pops = 0;
    while (!queue.empty()) {
        auto id = queue.front();
        queue.pop_front();
        if (nodes[id].closed) continue;
        nodes[id].closed = true;
        if (++pops > state_budget)
            throw ResourceError("alignment of trace <" + sequence_to_string(trace) + "> exceeded the state budget of " +
                                std::to_string(state_budget));

        const auto pos = nodes[id].key.position;
        const auto dist = nodes[id].dist;
        const Marking marking = nodes[id].key.marking;
        if (pos == trace.size() && marking == net.final_marking()) {
            Alignment out;
            out.cost = static_cast<double>(dist);
            for (auto cur = id; nodes[cur].parent != kNoParent; cur = nodes[cur].parent)
                out.moves.push_back(nodes[cur].move);
            std::reverse(out.moves.begin(), out.moves.end());
            return out;
        }

        for (auto t : enabled(net, marking)) {
            auto next = fire(net, marking, t);
            const auto& label = net.transitions()[t].label;
            if (!label) {
                relax({pos, next}, dist, id, {AlignmentMove::Kind::Silent, std::nullopt, t}, true);
                continue;
            }
            if (pos < trace.size() && *label == trace[pos])
                relax({pos + 1, next}, dist, id, {AlignmentMove::Kind::Sync, trace[pos], t}, true);
            relax({pos, std::move(next)}, dist + 1, id, {AlignmentMove::Kind::Model, std::nullopt, t}, false);
        }
        if (pos < trace.size())
            relax({pos + 1, marking}, dist + 1, id, {AlignmentMove::Kind::Log, trace[pos], std::nullopt}, false);
    }
    throw std::domain_error("final marking is unreachable; no alignment exists for trace <" +
                            sequence_to_string(trace) + ">");
}

std::size_t shortest_model_path(const PetriNet& net, std::size_t state_budget) {
    return static_cast<std::size_t>(optimal_alignment({}, net, state_budget).cost);
}

ReplayResult replay(const EventLog& log, const PetriNet& net, const ConformanceOptions& options) {
    if (log.empty()) throw std::invalid_argument("cannot replay an empty log");
    const auto model_path = static_cast<double>(shortest_model_path(net, options.state_budget));

    std::vector<const Sequence*> variants;
    std::vector<std::size_t> counts;
    for (const auto& [seq, variant] : log) {
        variants.push_back(&seq);
        counts.push_back(variant.count);
    }
    std::vector<double> costs(variants.size(), 0.0);

    if (options.execution == Execution::Parallel) {
        const auto n = static_cast<std::int64_t>(variants.size());
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                costs[i] = optimal_alignment(*variants[i], net, options.state_budget).cost;
            } catch (...) {
#pragma omp critical(dualminer_replay_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else {
        for (std::size_t i = 0; i < variants.size(); ++i)
            costs[i] = optimal_alignment(*variants[i], net, options.state_budget).cost;
    }

    // fixed-order reduction keeps the result independent of scheduling
    double fitness_sum = 0.0;
    std::size_t fitting = 0;
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const double denom = static_cast<double>(variants[i]->size()) + model_path;
        const double fitness = denom == 0.0 ? 1.0 : 1.0 - costs[i] / denom;
        fitness_sum += fitness * static_cast<double>(counts[i]);
        if (costs[i] == 0.0) fitting += counts[i];
    }
    const auto total = static_cast<double>(log.total_count());
    return {fitness_sum / total, static_cast<double>(fitting) / total, std::move(costs)};
}

double align_fitness(const EventLog& log, const PetriNet& net, const ConformanceOptions& options) {
    return replay(log, net, options).align_fitness;
}

double trace_fitness(const EventLog& log, const PetriNet& net, const ConformanceOptions& options) {
    return replay(log, net, options).trace_fitness;
}

namespace {

using MarkingSet = std::set<Marking>;

MarkingSet silent_closure(const PetriNet& net, MarkingSet seeds, std::size_t budget) {
    std::vector<Marking> stack(seeds.begin(), seeds.end());
    while (!stack.empty()) {
        auto m = std::move(stack.back());
        stack.pop_back();
        for (auto t : enabled(net, m)) {
            if (!net.transitions()[t].silent()) continue;
            auto next = fire(net, m, t);
            if (seeds.insert(next).second) {
                if (seeds.size() > budget) throw ResourceError("silent closure exceeded the state budget");
                stack.push_back(std::move(next));
            }
        }
    }
    return seeds;
}

struct PrefixNode {
    std::size_t weight = 0;
    std::size_t ends = 0;
    std::map<Activity, std::size_t> children;
};

}  // namespace

double etc_precision(const EventLog& log, const PetriNet& net, std::size_t state_budget) {
    if (log.empty()) throw std::invalid_argument("precision needs a non-empty log");

    std::vector<PrefixNode> trie(1);
    for (const auto& [seq, variant] : log) {
        std::size_t cur = 0;
        trie[cur].weight += variant.count;
        for (const auto& a : seq) {
            auto it = trie[cur].children.find(a);
            std::size_t next;
            if (it == trie[cur].children.end()) {
                next = trie.size();
                trie[cur].children.emplace(a, next);
                trie.emplace_back();
            } else {
                next = it->second;
            }
            cur = next;
            trie[cur].weight += variant.count;
        }
        trie[cur].ends += variant.count;
    }

    double allowed_total = 0.0;
    double escaping_total = 0.0;
    std::vector<std::pair<std::size_t, MarkingSet>> work;
    work.emplace_back(0, silent_closure(net, {net.initial_marking()}, state_budget));
    while (!work.empty()) {
        auto [node_id, markings] = std::move(work.back());
        work.pop_back();
        const auto& node = trie[node_id];

        std::set<Activity> allowed;
        for (const auto& m : markings)
            for (auto t : enabled(net, m))
                if (const auto& label = net.transitions()[t].label) allowed.insert(*label);
        const bool can_end = markings.contains(net.final_marking());

        std::size_t allowed_count = allowed.size() + (can_end ? 1 : 0);
        std::size_t escaping = 0;
        for (const auto& a : allowed)
            if (!node.children.contains(a)) ++escaping;
        if (can_end && node.ends == 0) ++escaping;

        const auto w = static_cast<double>(node.weight);
        allowed_total += w * static_cast<double>(allowed_count);
        escaping_total += w * static_cast<double>(escaping);

        for (const auto& [activity, child] : node.children) {
            if (!allowed.contains(activity)) continue;
            MarkingSet next;
            for (const auto& m : markings)
                for (auto t : enabled(net, m))
                    if (net.transitions()[t].label == activity) next.insert(fire(net, m, t));
            if (next.empty()) continue;
            work.emplace_back(child, silent_closure(net, std::move(next), state_budget));
        }
    }
    if (allowed_total == 0.0) throw std::domain_error("precision is undefined: no prefix of the log replays");
    return 1.0 - escaping_total / allowed_total;
}

}  // namespace dualminer
