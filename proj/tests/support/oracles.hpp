#pragma once

// Slow reference computations used to check the library. They work on plain
// strings and explicit enumeration and share no code with the kernels under test.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dualminer/event_log.hpp"
#include "dualminer/petri.hpp"
#include "dualminer/process_tree.hpp"

namespace dualminer::oracle {

using Word = std::vector<std::string>;
using Language = std::set<Word>;

inline const std::string kStart = "|>";
inline const std::string kEnd = "[]";

inline Word words(const Sequence& seq) {
    Word w;
    for (const auto& a : seq) w.push_back(a.name());
    return w;
}

// ---------------------------------------------------------------- DFG

struct PairCounts {
    std::map<std::pair<std::string, std::string>, std::uint64_t> edges;
    std::uint64_t traces = 0;

    std::uint64_t at(const std::string& x, const std::string& y) const {
        auto it = edges.find({x, y});
        return it == edges.end() ? 0 : it->second;
    }
    std::uint64_t out(const std::string& x) const {
        std::uint64_t s = 0;
        for (const auto& [k, w] : edges)
            if (k.first == x) s += w;
        return s;
    }
    std::uint64_t in(const std::string& y) const {
        std::uint64_t s = 0;
        for (const auto& [k, w] : edges)
            if (k.second == y) s += w;
        return s;
    }
};

/// Expands every variant into its copies and counts adjacent pairs one trace at a time.
inline PairCounts count_pairs(const EventLog& log) {
    PairCounts pc;
    for (const auto& [seq, variant] : log) {
        for (std::size_t copy = 0; copy < variant.count; ++copy) {
            Word padded{kStart};
            for (const auto& a : seq) padded.push_back(a.name());
            padded.push_back(kEnd);
            for (std::size_t i = 0; i + 1 < padded.size(); ++i) ++pc.edges[{padded[i], padded[i + 1]}];
            ++pc.traces;
        }
    }
    return pc;
}

inline bool reachable(const PairCounts& pc, const std::string& from, const std::string& to) {
    std::set<std::string> seen;
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (const auto& [k, w] : pc.edges) {
            if (k.first != x || w == 0) continue;
            if (k.second == to) return true;
            if (seen.insert(k.second).second) queue.push_back(k.second);
        }
    }
    return false;
}

// ---------------------------------------------------------------- cut costs

struct Costs {
    double dev = 0.0;
    double mis_strength = 0.0;
    double total(double sup) const { return dev + sup * mis_strength; }
};

/// Cut cost written directly from the operator rules over a pair table.
inline Costs cut_costs(const PairCounts& pc, Operator op, const std::set<std::string>& s1,
                       const std::set<std::string>& s2) {
    Costs c;
    auto strength = [&](const std::string& x, const std::string& y) {
        return static_cast<double>(std::min(pc.out(x), pc.in(y)));
    };
    auto side_boundary = [&](const std::set<std::string>& side) {
        bool starts = false;
        bool ends = false;
        for (const auto& a : side) {
            if (pc.at(kStart, a) > 0) starts = true;
            if (pc.at(a, kEnd) > 0) ends = true;
        }
        if (!starts) c.mis_strength += static_cast<double>(pc.traces);
        if (!ends) c.mis_strength += static_cast<double>(pc.traces);
    };
    if (op == Operator::Seq) {
        for (const auto& a : s1)
            for (const auto& b : s2) {
                c.dev += static_cast<double>(pc.at(b, a));
                if (!reachable(pc, a, b)) c.mis_strength += strength(a, b);
            }
    } else if (op == Operator::Xor) {
        for (const auto& a : s1)
            for (const auto& b : s2) c.dev += static_cast<double>(pc.at(a, b) + pc.at(b, a));
        side_boundary(s1);
        side_boundary(s2);
    } else if (op == Operator::And) {
        for (const auto& a : s1)
            for (const auto& b : s2) {
                if (pc.at(a, b) == 0) c.mis_strength += strength(a, b);
                if (pc.at(b, a) == 0) c.mis_strength += strength(b, a);
            }
        side_boundary(s1);
        side_boundary(s2);
    } else {
        std::set<std::string> starts;
        std::set<std::string> ends;
        for (const auto& a : s1) {
            if (pc.at(kStart, a) > 0) starts.insert(a);
            if (pc.at(a, kEnd) > 0) ends.insert(a);
        }
        // redo activities reached from the do part, and those leading back into it
        std::set<std::string> entries;
        std::set<std::string> exits;
        for (const auto& b : s2)
            for (const auto& a : s1) {
                if (pc.at(a, b) > 0) entries.insert(b);
                if (pc.at(b, a) > 0) exits.insert(b);
            }
        for (const auto& b : s2) {
            c.dev += static_cast<double>(pc.at(kStart, b) + pc.at(b, kEnd));
            for (const auto& a : s1) {
                if (!ends.count(a)) c.dev += static_cast<double>(pc.at(a, b));
                if (!starts.count(a)) c.dev += static_cast<double>(pc.at(b, a));
            }
            bool entered = !entries.empty() ? entries.count(b) > 0 : true;
            bool left = !exits.empty() ? exits.count(b) > 0 : true;
            if (entered)
                for (const auto& e : ends)
                    if (pc.at(e, b) == 0) c.mis_strength += strength(e, b);
            if (left)
                for (const auto& s : starts)
                    if (pc.at(b, s) == 0) c.mis_strength += strength(b, s);
        }
    }
    return c;
}

/// Pair table of `log` with every edge touching an activity outside `keep` removed.
/// The trace count is unchanged.
inline PairCounts restrict_pairs(const PairCounts& pc, const std::set<std::string>& keep) {
    PairCounts out;
    out.traces = pc.traces;
    auto ok = [&](const std::string& x) { return x == kStart || x == kEnd || keep.count(x) > 0; };
    for (const auto& [k, w] : pc.edges)
        if (ok(k.first) && ok(k.second)) out.edges[k] = w;
    return out;
}

struct OracleCut {
    Operator op;
    std::set<std::string> s1;
    std::set<std::string> s2;
};

/// Every (operator, Σ1, Σ2) with both sides non-empty, symmetric operators included in both orientations.
inline std::vector<OracleCut> all_cuts(const std::vector<std::string>& alphabet) {
    std::vector<OracleCut> cuts;
    const auto n = alphabet.size();
    for (auto op : {Operator::Seq, Operator::Xor, Operator::And, Operator::Loop})
        for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
            OracleCut c{op, {}, {}};
            for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? c.s1 : c.s2).insert(alphabet[i]);
            cuts.push_back(std::move(c));
        }
    return cuts;
}

// ---------------------------------------------------------------- tree language

namespace detail {

inline void interleave(const Word& x, std::size_t i, const Word& y, std::size_t j, Word& cur, Language& out) {
    if (i == x.size() && j == y.size()) {
        out.insert(cur);
        return;
    }
    if (i < x.size()) {
        cur.push_back(x[i]);
        interleave(x, i + 1, y, j, cur, out);
        cur.pop_back();
    }
    if (j < y.size()) {
        cur.push_back(y[j]);
        interleave(x, i, y, j + 1, cur, out);
        cur.pop_back();
    }
}

inline Language concat(const Language& a, const Language& b, std::size_t max_len) {
    Language out;
    for (const auto& x : a)
        for (const auto& y : b) {
            if (x.size() + y.size() > max_len) continue;
            Word w = x;
            w.insert(w.end(), y.begin(), y.end());
            out.insert(std::move(w));
        }
    return out;
}

}  // namespace detail

/// Whether `w` is a trace of `t`. Leaf labels must be distinct, which lets a
/// parallel node be checked through the projections onto its children.
inline bool accepts(const ProcessTree& t, const Word& w) {
    if (t.is_tau()) return w.empty();
    if (t.is_leaf()) return w.size() == 1 && w[0] == t.activity().name();
    const auto& kids = t.children();
    auto slice = [&](std::size_t from, std::size_t to) { return Word(w.begin() + from, w.begin() + to); };
    switch (t.op()) {
        case Operator::Xor:
            for (const auto& k : kids)
                if (accepts(k, w)) return true;
            return false;
        case Operator::Seq: {
            // positions reachable after consuming the first i children
            std::vector<bool> at(w.size() + 1, false);
            at[0] = true;
            for (const auto& k : kids) {
                std::vector<bool> next(w.size() + 1, false);
                for (std::size_t i = 0; i <= w.size(); ++i)
                    if (at[i])
                        for (std::size_t j = i; j <= w.size(); ++j)
                            if (!next[j] && accepts(k, slice(i, j))) next[j] = true;
                at = std::move(next);
            }
            return at[w.size()];
        }
        case Operator::And: {
            std::size_t covered = 0;
            for (const auto& k : kids) {
                std::set<std::string> names;
                for (const auto& a : k.alphabet()) names.insert(a.name());
                Word part;
                for (const auto& x : w)
                    if (names.count(x)) part.push_back(x);
                if (!accepts(k, part)) return false;
                covered += part.size();
            }
            return covered == w.size();
        }
        case Operator::Loop: {
            // do-part ends at positions in `done`; each redo then do-part extends them
            const auto n = w.size();
            std::vector<bool> done(n + 1, false);
            for (std::size_t j = 0; j <= n; ++j) done[j] = accepts(kids[0], slice(0, j));
            bool grew = true;
            while (grew) {
                grew = false;
                for (std::size_t i = 0; i <= n; ++i) {
                    if (!done[i]) continue;
                    for (std::size_t j = i; j <= n; ++j) {
                        if (!accepts(kids[1], slice(i, j))) continue;
                        for (std::size_t k = j; k <= n; ++k)
                            if (!done[k] && accepts(kids[0], slice(j, k))) {
                                done[k] = true;
                                grew = true;
                            }
                    }
                }
            }
            return done[n];
        }
    }
    return false;
}

/// All words of the tree's language with at most `max_len` activities.
inline Language language(const ProcessTree& t, std::size_t max_len) {
    if (t.is_tau()) return {Word{}};
    if (t.is_leaf()) return max_len >= 1 ? Language{Word{t.activity().name()}} : Language{};
    std::vector<Language> kids;
    for (const auto& c : t.children()) kids.push_back(language(c, max_len));
    switch (t.op()) {
        case Operator::Seq: {
            Language acc = kids[0];
            for (std::size_t i = 1; i < kids.size(); ++i) acc = detail::concat(acc, kids[i], max_len);
            return acc;
        }
        case Operator::Xor: {
            Language acc;
            for (const auto& k : kids) acc.insert(k.begin(), k.end());
            return acc;
        }
        case Operator::And: {
            Language acc = kids[0];
            for (std::size_t i = 1; i < kids.size(); ++i) {
                Language next;
                for (const auto& x : acc)
                    for (const auto& y : kids[i]) {
                        if (x.size() + y.size() > max_len) continue;
                        Word cur;
                        detail::interleave(x, 0, y, 0, cur, next);
                    }
                acc = std::move(next);
            }
            return acc;
        }
        case Operator::Loop: {
            // do (redo do)*, iterated until no new bounded word appears
            Language acc = kids[0];
            const auto round = detail::concat(kids[1], kids[0], max_len);
            while (true) {
                auto more = detail::concat(acc, round, max_len);
                const auto before = acc.size();
                acc.insert(more.begin(), more.end());
                if (acc.size() == before) break;
            }
            return acc;
        }
    }
    return {};
}

inline std::size_t leaf_count(const ProcessTree& t) {
    if (t.is_leaf() || t.is_tau()) return 1;
    std::size_t n = 0;
    for (const auto& c : t.children()) n += leaf_count(c);
    return n;
}

/// Escaping-edge precision from a bounded language: a prefix is replayable when
/// it starts some word, allowed(prefix) are the next activities of such words
/// plus an end marker when the prefix itself is a word.
inline double etc_precision(const EventLog& log, const Language& lang) {
    std::set<Word> prefixes_of_lang;
    for (const auto& w : lang)
        for (std::size_t i = 0; i <= w.size(); ++i) prefixes_of_lang.insert(Word(w.begin(), w.begin() + i));
    // prefix -> (weight, used labels)
    std::map<Word, std::pair<double, std::set<std::string>>> states;
    for (const auto& [seq, variant] : log) {
        const auto w = words(seq);
        for (std::size_t i = 0; i <= w.size(); ++i) {
            Word p(w.begin(), w.begin() + i);
            auto& s = states[p];
            s.first += static_cast<double>(variant.count);
            s.second.insert(i < w.size() ? w[i] : kEnd);
        }
    }
    double escaping = 0.0;
    double allowed_total = 0.0;
    for (const auto& [p, st] : states) {
        if (!prefixes_of_lang.count(p)) continue;
        std::set<std::string> allowed;
        if (lang.count(p)) allowed.insert(kEnd);
        for (const auto& w : lang)
            if (w.size() > p.size() && std::equal(p.begin(), p.end(), w.begin())) allowed.insert(w[p.size()]);
        std::size_t esc = 0;
        for (const auto& a : allowed)
            if (!st.second.count(a)) ++esc;
        escaping += st.first * static_cast<double>(esc);
        allowed_total += st.first * static_cast<double>(allowed.size());
    }
    return 1.0 - escaping / allowed_total;
}

// ---------------------------------------------------------------- net language

/// Visible words of complete runs (initial to final marking) with at most
/// `max_len` labelled firings, by exhaustive search over (marking, word).
inline Language net_language(const PetriNet& net, std::size_t max_len) {
    using Tokens = std::vector<std::uint32_t>;
    Language out;
    std::set<std::pair<Tokens, Word>> seen;
    std::deque<std::pair<Tokens, Word>> queue;
    queue.emplace_back(net.initial_marking().tokens(), Word{});
    seen.insert(queue.front());
    while (!queue.empty()) {
        auto [m, w] = queue.front();
        queue.pop_front();
        if (m == net.final_marking().tokens()) out.insert(w);
        for (std::size_t t = 0; t < net.transitions().size(); ++t) {
            bool ok = true;
            Tokens next = m;
            for (auto p : net.preset(t)) {
                if (next[p] == 0) {
                    ok = false;
                    break;
                }
                --next[p];
            }
            if (!ok) continue;
            for (auto p : net.postset(t)) ++next[p];
            Word nw = w;
            if (const auto& label = net.transitions()[t].label) {
                if (w.size() == max_len) continue;
                nw.push_back(label->name());
            }
            if (seen.emplace(next, nw).second) queue.emplace_back(std::move(next), std::move(nw));
        }
    }
    return out;
}

// ---------------------------------------------------------------- alignments

/// Minimum alignment cost by explicit construction of the synchronous product of
/// the trace and the net's reachability graph, then Bellman-Ford relaxation.
/// Only suitable for bounded nets with small state spaces.
inline std::size_t alignment_cost(const Word& trace, const PetriNet& net) {
    using Tokens = std::vector<std::uint32_t>;
    const auto& transitions = net.transitions();

    auto can_fire = [&](const Tokens& m, std::size_t t) {
        Tokens need(m.size(), 0);
        for (auto p : net.preset(t)) ++need[p];
        for (std::size_t p = 0; p < m.size(); ++p)
            if (m[p] < need[p]) return false;
        return true;
    };
    auto do_fire = [&](Tokens m, std::size_t t) {
        for (auto p : net.preset(t)) --m[p];
        for (auto p : net.postset(t)) ++m[p];
        return m;
    };

    // reachability graph of the net alone
    std::map<Tokens, std::size_t> index;
    std::vector<Tokens> markings;
    std::deque<std::size_t> queue;
    auto intern = [&](const Tokens& m) {
        auto [it, fresh] = index.emplace(m, markings.size());
        if (fresh) {
            markings.push_back(m);
            queue.push_back(it->second);
        }
        return it->second;
    };
    intern(net.initial_marking().tokens());
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> arcs;  // (transition, target)
    while (!queue.empty()) {
        auto i = queue.front();
        queue.pop_front();
        if (markings.size() > 100000) throw std::runtime_error("oracle state space too large");
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t t = 0; t < transitions.size(); ++t)
            if (can_fire(markings[i], t)) out.emplace_back(t, intern(do_fire(markings[i], t)));
        if (arcs.size() <= i) arcs.resize(i + 1);
        arcs[i] = std::move(out);
    }
    arcs.resize(markings.size());

    const auto n_pos = trace.size() + 1;
    const auto n_states = n_pos * markings.size();
    constexpr auto kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n_states, kInf);
    auto id = [&](std::size_t pos, std::size_t m) { return pos * markings.size() + m; };
    dist[id(0, 0)] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t pos = 0; pos < n_pos; ++pos)
            for (std::size_t m = 0; m < markings.size(); ++m) {
                const auto d = dist[id(pos, m)];
                if (d == kInf) continue;
                auto relax = [&](std::size_t target, std::size_t cost) {
                    if (d + cost < dist[target]) {
                        dist[target] = d + cost;
                        changed = true;
                    }
                };
                if (pos < trace.size()) relax(id(pos + 1, m), 1);  // log move
                for (const auto& [t, target] : arcs[m]) {
                    const auto& tr = transitions[t];
                    if (!tr.label) {
                        relax(id(pos, target), 0);
                        continue;
                    }
                    relax(id(pos, target), 1);  // model move
                    if (pos < trace.size() && tr.label->name() == trace[pos]) relax(id(pos + 1, target), 0);
                }
            }
    }
    std::size_t best = kInf;
    const auto& final_tokens = net.final_marking().tokens();
    for (std::size_t m = 0; m < markings.size(); ++m)
        if (markings[m] == final_tokens) best = std::min(best, dist[id(trace.size(), m)]);
    return best;
}

}  // namespace dualminer::oracle
