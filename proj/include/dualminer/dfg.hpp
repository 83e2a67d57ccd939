#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dualminer/event_log.hpp"

namespace dualminer {

/// Directly-follows graph with artificial start and end nodes.
///
/// Nodes are dense indices: activities occupy [0, n) in sorted order, then
/// start() == n and end() == n + 1. Weights live in a dense (n+2)^2 matrix;
/// alphabets in discovery stay small enough that this beats a hash map.
class Dfg {
public:
    using Node = std::size_t;
    using Weight = std::uint64_t;

    Dfg() : Dfg(AlphabetSet{}) {}
    /// Graph over `alphabet` with no edges.
    explicit Dfg(const AlphabetSet& alphabet);

    std::size_t activity_count() const noexcept { return activities_.size(); }
    std::size_t node_count() const noexcept { return activities_.size() + 2; }
    Node start() const noexcept { return activities_.size(); }
    Node end() const noexcept { return activities_.size() + 1; }

    const std::vector<Activity>& activities() const noexcept { return activities_; }
    const Activity& activity(Node n) const { return activities_.at(n); }
    /// Throws std::invalid_argument when `a` is not a node of this graph.
    Node node(const Activity& a) const;
    bool contains(const Activity& a) const noexcept;

    Weight weight(Node from, Node to) const noexcept { return weights_[from * node_count() + to]; }
    Weight weight(const Activity& from, const Activity& to) const { return weight(node(from), node(to)); }
    Weight out_weight(Node n) const noexcept { return out_[n]; }
    Weight in_weight(Node n) const noexcept { return in_[n]; }
    /// Occurrences of an activity in the log (0 for start/end).
    Weight frequency(Node n) const noexcept { return n < freq_.size() ? freq_[n] : 0; }
    /// Number of traces the graph was built from.
    Weight trace_count() const noexcept { return traces_; }
    Weight total_weight() const noexcept;

    /// True iff a path of one or more positive-weight edges leads from `from` to `to`.
    bool reachable(Node from, Node to) const;
    bool reachable(const Activity& from, const Activity& to) const { return reachable(node(from), node(to)); }

    /// Adds `w` to edge (from, to). Rejects edges into start or out of end.
    void add_edge(Node from, Node to, Weight w);
    void add_frequency(Node n, Weight w);
    void add_traces(Weight w) { traces_ += w; }

    /// Same graph with every weight and count multiplied by `factor`.
    Dfg scaled(Weight factor) const;

    /// Graph over `alphabet` keeping only edges whose endpoints both lie in
    /// `alphabet` ∪ {start, end}. Activities of `alphabet` missing here become
    /// isolated nodes. The trace count is carried over unchanged.
    Dfg restricted_to(const AlphabetSet& alphabet) const;

    std::string to_dot() const;

private:
    friend Dfg build_dfg(const EventLog& log);
    void rebuild_closure();
    bool search(Node from, Node to) const;

    std::vector<Activity> activities_;
    std::vector<Weight> weights_;
    std::vector<Weight> out_;
    std::vector<Weight> in_;
    std::vector<Weight> freq_;
    Weight traces_ = 0;
    // reachability closure; stale after add_edge until rebuilt, then reachable() falls back to a search
    std::vector<std::uint8_t> closure_;
    bool closure_valid_ = false;
};

Dfg build_dfg(const EventLog& log);

}  // namespace dualminer
