#include "dualminer/dfg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dualminer {

Dfg::Dfg(const AlphabetSet& alphabet)
    : activities_(alphabet.begin(), alphabet.end()),
      weights_(node_count() * node_count(), 0),
      out_(node_count(), 0),
      in_(node_count(), 0),
      freq_(activities_.size(), 0) {
    rebuild_closure();
}

Dfg::Node Dfg::node(const Activity& a) const {
    auto it = std::lower_bound(activities_.begin(), activities_.end(), a);
    if (it == activities_.end() || *it != a)
        throw std::invalid_argument("activity '" + a.name() + "' is not a node of this graph");
    return static_cast<Node>(it - activities_.begin());
}

bool Dfg::contains(const Activity& a) const noexcept {
    return std::binary_search(activities_.begin(), activities_.end(), a);
}

Dfg::Weight Dfg::total_weight() const noexcept {
    Weight total = 0;
    for (auto w : weights_) total += w;
    return total;
}

void Dfg::add_edge(Node from, Node to, Weight w) {
    if (from >= node_count() || to >= node_count()) throw std::invalid_argument("edge endpoint out of range");
    if (to == start()) throw std::invalid_argument("no edge may enter the start node");
    if (from == end()) throw std::invalid_argument("no edge may leave the end node");
    if (w == 0) return;
    weights_[from * node_count() + to] += w;
    out_[from] += w;
    in_[to] += w;
    closure_valid_ = false;
}

void Dfg::add_frequency(Node n, Weight w) {
    if (n >= activities_.size()) throw std::invalid_argument("frequency is only tracked for activities");
    freq_[n] += w;
}

bool Dfg::search(Node from, Node to) const {
    const auto n = node_count();
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<Node> stack;
    for (Node next = 0; next < n; ++next)
        if (weight(from, next) > 0 && !seen[next]) {
            seen[next] = 1;
            stack.push_back(next);
        }
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        if (cur == to) return true;
        for (Node next = 0; next < n; ++next)
            if (weight(cur, next) > 0 && !seen[next]) {
                seen[next] = 1;
                stack.push_back(next);
            }
    }
    return false;
}

void Dfg::rebuild_closure() {
    const auto n = node_count();
    closure_.assign(n * n, 0);
    for (Node i = 0; i < n; ++i)
        for (Node j = 0; j < n; ++j) closure_[i * n + j] = weight(i, j) > 0;
    // Warshall
    for (Node k = 0; k < n; ++k)
        for (Node i = 0; i < n; ++i)
            if (closure_[i * n + k])
                for (Node j = 0; j < n; ++j)
                    if (closure_[k * n + j]) closure_[i * n + j] = 1;
    closure_valid_ = true;
}

bool Dfg::reachable(Node from, Node to) const {
    if (from >= node_count() || to >= node_count()) throw std::invalid_argument("unknown node");
    if (closure_valid_) return closure_[from * node_count() + to] != 0;
    return search(from, to);
}

Dfg Dfg::scaled(Weight factor) const {
    Dfg out(*this);
    for (auto& w : out.weights_) w *= factor;
    for (auto& w : out.out_) w *= factor;
    for (auto& w : out.in_) w *= factor;
    for (auto& w : out.freq_) w *= factor;
    out.traces_ *= factor;
    if (factor == 0) out.rebuild_closure();
    return out;
}

Dfg Dfg::restricted_to(const AlphabetSet& alphabet) const {
    Dfg out(alphabet);
    auto map_node = [&](Node n) -> std::optional<Node> {
        if (n == start()) return out.start();
        if (n == end()) return out.end();
        if (!out.contains(activities_[n])) return std::nullopt;
        return out.node(activities_[n]);
    };
    for (Node i = 0; i < node_count(); ++i) {
        auto from = map_node(i);
        if (!from) continue;
        if (i < activities_.size()) out.freq_[*from] = freq_[i];
        for (Node j = 0; j < node_count(); ++j) {
            auto w = weight(i, j);
            if (w == 0) continue;
            if (auto to = map_node(j)) out.add_edge(*from, *to, w);
        }
    }
    out.traces_ = traces_;
    out.rebuild_closure();
    return out;
}

std::string Dfg::to_dot() const {
    std::ostringstream out;
    out << "digraph dfg {\n  rankdir=LR;\n";
    auto label = [&](Node n) -> std::string {
        if (n == start()) return "▷";
        if (n == end()) return "□";
        std::string escaped;
        for (char c : activities_[n].name()) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        return escaped;
    };
    for (Node n = 0; n < node_count(); ++n) {
        out << "  n" << n << " [label=\"" << label(n);
        if (n < activities_.size()) out << " (" << freq_[n] << ")";
        out << "\"];\n";
    }
    for (Node i = 0; i < node_count(); ++i)
        for (Node j = 0; j < node_count(); ++j)
            if (auto w = weight(i, j)) out << "  n" << i << " -> n" << j << " [label=\"" << w << "\"];\n";
    out << "}\n";
    return out.str();
}

Dfg build_dfg(const EventLog& log) {
    Dfg g(log.alphabet());
    std::vector<Dfg::Node> nodes;
    for (const auto& [seq, variant] : log) {
        const auto w = static_cast<Dfg::Weight>(variant.count);
        nodes.clear();
        for (const auto& a : seq) nodes.push_back(g.node(a));
        auto prev = g.start();
        for (auto n : nodes) {
            g.add_edge(prev, n, w);
            g.add_frequency(n, w);
            prev = n;
        }
        g.add_edge(prev, g.end(), w);
        g.add_traces(w);
    }
    g.rebuild_closure();
    return g;
}

}  // namespace dualminer
