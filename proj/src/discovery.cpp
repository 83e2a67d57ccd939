#include "dualminer/discovery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace dualminer {

void DiscoveryParams::validate() const {
    if (!(sup >= 0.0 && sup <= 1.0)) throw std::invalid_argument("sup must lie in [0, 1]");
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::invalid_argument("ratio must lie in [0, 1]");
}

namespace {

constexpr std::array<Operator, 4> kOperators{Operator::Seq, Operator::Xor, Operator::And, Operator::Loop};

int priority(Operator op) {
    switch (op) {
        case Operator::Seq: return 0;
        case Operator::Xor: return 1;
        case Operator::And: return 2;
        case Operator::Loop: return 3;
    }
    return 4;
}

bool symmetric(Operator op) { return op == Operator::Xor || op == Operator::And; }

// Costs are compared on a fixed grid so that mathematically equal sums that
// differ in the last ulp still tie and fall through to the structural rules.
std::int64_t cost_key(double cost) { return std::llround(cost * 1e7); }

struct Candidate {
    Operator op = Operator::Seq;
    SideAssignment in1;
    std::size_t size1 = 0;
    double cost = 0.0;
    std::int64_t key = 0;
};

// For equal-size sides: the one holding the first differing activity is lexicographically smaller.
bool lex_less(const SideAssignment& a, const SideAssignment& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

bool better(const Candidate& a, const Candidate& b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.op != b.op) return priority(a.op) < priority(b.op);
    if (a.size1 != b.size1) return a.size1 < b.size1;
    return lex_less(a.in1, b.in1);
}

std::size_t count_ones(const SideAssignment& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), std::uint8_t{1}));
}

// Picks the (sigma1, sigma2) orientation that represents an unordered partition.
void canonicalize(Operator op, SideAssignment& in1) {
    if (!symmetric(op)) return;
    const auto ones = count_ones(in1);
    const auto zeros = in1.size() - ones;
    bool flip = ones > zeros || (ones == zeros && !in1.empty() && in1[0] == 0);
    if (flip)
        for (auto& v : in1) v = 1 - v;
}

class CutScorer {
public:
    CutScorer(const Dfg& plus, const Dfg& minus, double sup, double ratio)
        : plus_(plus), minus_(minus), sup_(sup), ratio_(ratio) {}

    Candidate score(Operator op, SideAssignment in1) const {
        Candidate c;
        c.op = op;
        const auto p = cost_terms(plus_, op, in1);
        double cost = p.cost(sup_);
        if (ratio_ != 0.0 && minus_.trace_count() > 0) cost -= ratio_ * cost_terms(minus_, op, in1).cost(sup_);
        c.size1 = count_ones(in1);
        c.in1 = std::move(in1);
        c.cost = cost;
        c.key = cost_key(cost);
        return c;
    }

    std::size_t size() const { return plus_.activity_count(); }

private:
    const Dfg& plus_;
    const Dfg& minus_;
    double sup_;
    double ratio_;
};

SideAssignment from_mask(std::uint64_t mask, std::size_t n) {
    SideAssignment s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
    return s;
}

// Canonical for symmetric operators: fewer activities in sigma1, or equal
// sizes and activity 0 in sigma1.
bool canonical_mask(std::uint64_t mask, std::size_t n) {
    const auto ones = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (2 * ones != n) return 2 * ones < n;
    return (mask & 1u) != 0;
}

void keep_better(std::optional<Candidate>& best, Candidate c) {
    if (!best || better(c, *best)) best = std::move(c);
}

std::optional<Candidate> exhaustive_serial(const CutScorer& scorer) {
    const auto n = scorer.size();
    const std::uint64_t total = std::uint64_t{1} << n;
    std::optional<Candidate> best;
    for (std::uint64_t mask = 1; mask + 1 < total; ++mask)
        for (auto op : kOperators) {
            if (symmetric(op) && !canonical_mask(mask, n)) continue;
            keep_better(best, scorer.score(op, from_mask(mask, n)));
        }
    return best;
}

std::optional<Candidate> exhaustive_parallel(const CutScorer& scorer) {
    const auto n = scorer.size();
    const auto total = static_cast<std::int64_t>(std::uint64_t{1} << n);
    std::optional<Candidate> best;
#pragma omp parallel
    {
        std::optional<Candidate> local;
#pragma omp for schedule(dynamic, 256) nowait
        for (std::int64_t m = 1; m < total - 1; ++m) {
            const auto mask = static_cast<std::uint64_t>(m);
            for (auto op : kOperators) {
                if (symmetric(op) && !canonical_mask(mask, n)) continue;
                keep_better(local, scorer.score(op, from_mask(mask, n)));
            }
        }
        // `better` is a total order over distinct candidates, so the merge order is irrelevant
#pragma omp critical(dualminer_cut_merge)
        if (local) keep_better(best, std::move(*local));
    }
    return best;
}

// Structural starting points: weakly connected components, strongly connected
// components, prefixes of the condensation's topological order, and the
// start/end activities against the rest.
std::vector<SideAssignment> structural_seeds(const Dfg& g) {
    const auto n = g.activity_count();
    std::vector<SideAssignment> seeds;
    auto add = [&](const SideAssignment& s) {
        auto ones = count_ones(s);
        if (ones > 0 && ones < n) seeds.push_back(s);
    };

    // weak components
    std::vector<std::size_t> comp(n, n);
    std::size_t comps = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] != n) continue;
        std::vector<std::size_t> stack{root};
        comp[root] = comps;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (std::size_t y = 0; y < n; ++y)
                if (comp[y] == n && (g.weight(x, y) > 0 || g.weight(y, x) > 0)) {
                    comp[y] = comps;
                    stack.push_back(y);
                }
        }
        ++comps;
    }
    if (comps > 1)
        for (std::size_t c = 0; c < comps; ++c) {
            SideAssignment s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = comp[i] == c;
            add(s);
        }

    // strongly connected components via mutual reachability
    std::vector<std::size_t> scc(n, n);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < n; ++i) {
        if (scc[i] != n) continue;
        scc[i] = members.size();
        members.push_back({i});
        for (std::size_t j = i + 1; j < n; ++j)
            if (scc[j] == n && g.reachable(i, j) && g.reachable(j, i)) {
                scc[j] = scc[i];
                members.back().push_back(j);
            }
    }
    // topological order of the condensation: fewer reachable components first
    std::vector<std::size_t> order(members.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    auto reaches = [&](std::size_t a, std::size_t b) { return g.reachable(members[a][0], members[b][0]); };
    std::vector<std::size_t> rank(members.size(), 0);
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = 0; b < members.size(); ++b)
            if (a != b && reaches(b, a)) ++rank[a];
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });
    if (members.size() > 1) {
        SideAssignment prefix(n, 0);
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            for (auto i : members[order[k]]) prefix[i] = 1;
            add(prefix);
        }
        for (const auto& m : members) {
            SideAssignment s(n, 0);
            for (auto i : m) s[i] = 1;
            add(s);
        }
    }

    SideAssignment boundary(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        boundary[i] = g.weight(g.start(), i) > 0 || g.weight(i, g.end()) > 0;
    add(boundary);
    return seeds;
}

struct SearchStart {
    Operator op;
    SideAssignment in1;
};

std::vector<SearchStart> search_starts(const Dfg& g, const DiscoveryParams& params) {
    const auto n = g.activity_count();
    const auto seeds = structural_seeds(g);
    std::vector<SearchStart> starts;
    for (std::size_t k = 0; k < kOperators.size(); ++k) {
        const auto op = kOperators[k];
        std::set<SideAssignment> seen;
        auto push = [&](SideAssignment s) {
            canonicalize(op, s);
            if (seen.insert(s).second) starts.push_back({op, std::move(s)});
        };
        for (const auto& s : seeds) {
            push(s);
            SideAssignment flipped = s;
            for (auto& v : flipped) v = 1 - v;
            push(std::move(flipped));
        }
        std::mt19937_64 rng(params.seed * 0x9e3779b97f4a7c15ULL + k + 1);
        std::bernoulli_distribution coin(0.5);
        for (std::size_t r = 0; r < params.search_restarts; ++r) {
            SideAssignment s(n);
            std::size_t ones = 0;
            do {
                ones = 0;
                for (auto& v : s) ones += (v = coin(rng) ? 1 : 0);
            } while (ones == 0 || ones == n);
            push(std::move(s));
        }
    }
    return starts;
}

// Steepest descent over single-activity moves under the candidate order.
Candidate climb(const CutScorer& scorer, const SearchStart& start) {
    const auto n = scorer.size();
    Candidate current = scorer.score(start.op, start.in1);
    while (true) {
        std::optional<Candidate> best_move;
        for (std::size_t i = 0; i < n; ++i) {
            SideAssignment next = current.in1;
            next[i] = 1 - next[i];
            auto ones = count_ones(next);
            if (ones == 0 || ones == n) continue;
            canonicalize(start.op, next);
            keep_better(best_move, scorer.score(start.op, std::move(next)));
        }
        if (!best_move || !better(*best_move, current)) return current;
        current = std::move(*best_move);
    }
}

std::vector<Candidate> local_optima(const CutScorer& scorer, const Dfg& g, const DiscoveryParams& params) {
    const auto starts = search_starts(g, params);
    std::vector<Candidate> results(starts.size());
    if (params.execution == Execution::Parallel) {
        const auto count = static_cast<std::int64_t>(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i) results[i] = climb(scorer, starts[i]);
    } else {
        for (std::size_t i = 0; i < starts.size(); ++i) results[i] = climb(scorer, starts[i]);
    }
    std::sort(results.begin(), results.end(), better);
    results.erase(std::unique(results.begin(), results.end(),
                              [](const Candidate& a, const Candidate& b) { return a.op == b.op && a.in1 == b.in1; }),
                  results.end());
    return results;
}

Cut to_cut(const Dfg& g, Operator op, const SideAssignment& in1) {
    Cut cut;
    cut.op = op;
    for (std::size_t i = 0; i < in1.size(); ++i) (in1[i] ? cut.sigma1 : cut.sigma2).insert(g.activity(i));
    return cut;
}

bool use_exhaustive(std::size_t n, const DiscoveryParams& params) {
    return n <= std::min(params.exhaustive_limit, kMaxExhaustiveAlphabet);
}

void require_splittable(const Dfg& g) {
    if (g.activity_count() < 2)
        throw std::invalid_argument("cut search needs at least two activities; handle base cases first");
}

}  // namespace

std::vector<Cut> enumerate_cuts(const Dfg& g_plus, const Dfg& g_minus, const DiscoveryParams& params) {
    params.validate();
    require_splittable(g_plus);
    const auto n = g_plus.activity_count();
    std::vector<Cut> cuts;
    if (use_exhaustive(n, params)) {
        const std::uint64_t total = std::uint64_t{1} << n;
        for (auto op : kOperators)
            for (std::uint64_t mask = 1; mask + 1 < total; ++mask) {
                if (symmetric(op) && !canonical_mask(mask, n)) continue;
                cuts.push_back(to_cut(g_plus, op, from_mask(mask, n)));
            }
        return cuts;
    }
    const auto minus = g_minus.restricted_to(AlphabetSet(g_plus.activities().begin(), g_plus.activities().end()));
    CutScorer scorer(g_plus, minus, params.sup, params.ratio);
    for (const auto& c : local_optima(scorer, g_plus, params)) cuts.push_back(to_cut(g_plus, c.op, c.in1));
    return cuts;
}

ScoredCut find_optimal_cut(const Dfg& g_plus, const Dfg& g_minus, const DiscoveryParams& params) {
    params.validate();
    require_splittable(g_plus);
    const auto minus = g_minus.restricted_to(AlphabetSet(g_plus.activities().begin(), g_plus.activities().end()));
    CutScorer scorer(g_plus, minus, params.sup, params.ratio);

    std::optional<Candidate> best;
    if (use_exhaustive(g_plus.activity_count(), params)) {
        best = params.execution == Execution::Parallel ? exhaustive_parallel(scorer) : exhaustive_serial(scorer);
    } else {
        auto optima = local_optima(scorer, g_plus, params);
        if (!optima.empty()) best = std::move(optima.front());
    }
    if (!best) throw std::logic_error("cut search produced no candidate");
    return {to_cut(g_plus, best->op, best->in1), best->cost};
}

std::optional<ProcessTree> base_case(const EventLog& log, const Recurse& recurse) {
    if (log.alphabet().empty()) return ProcessTree::tau();
    if (log.count(Sequence{}) > 0) {
        std::vector<ProcessTree> kids;
        kids.push_back(ProcessTree::tau());
        kids.push_back(recurse(without_empty_traces(log)));
        return ProcessTree::node(Operator::Xor, std::move(kids));
    }
    if (log.alphabet().size() == 1) {
        const auto a = *log.alphabet().begin();
        if (log.distinct_count() == 1 && log.begin()->first.size() == 1) return ProcessTree::leaf(a);
        std::vector<ProcessTree> kids;
        kids.push_back(ProcessTree::leaf(a));
        kids.push_back(ProcessTree::tau());
        return ProcessTree::node(Operator::Loop, std::move(kids));
    }
    return std::nullopt;
}

std::pair<EventLog, EventLog> split_logs(const EventLog& log, const Cut& cut) {
    AlphabetSet all = cut.sigma1;
    all.insert(cut.sigma2.begin(), cut.sigma2.end());
    const auto projected = project(log, all);
    EventLog left;
    EventLog right;
    auto in1 = [&](const Activity& a) { return cut.sigma1.contains(a); };

    for (const auto& [seq, variant] : projected) {
        const auto count = variant.count;
        switch (cut.op) {
            case Operator::Seq: {
                // misplaced(k) = sigma2 events before k + sigma1 events from k on
                std::size_t ones_after = static_cast<std::size_t>(std::count_if(seq.begin(), seq.end(), in1));
                std::size_t twos_before = 0;
                std::size_t best_k = 0;
                std::size_t best = ones_after;
                for (std::size_t k = 1; k <= seq.size(); ++k) {
                    if (in1(seq[k - 1])) --ones_after;
                    else ++twos_before;
                    if (twos_before + ones_after < best) {
                        best = twos_before + ones_after;
                        best_k = k;
                    }
                }
                Sequence a;
                Sequence b;
                for (std::size_t i = 0; i < best_k; ++i)
                    if (in1(seq[i])) a.push_back(seq[i]);
                for (std::size_t i = best_k; i < seq.size(); ++i)
                    if (!in1(seq[i])) b.push_back(seq[i]);
                left.add(std::move(a), count);
                right.add(std::move(b), count);
                break;
            }
            case Operator::Xor: {
                const auto ones = static_cast<std::size_t>(std::count_if(seq.begin(), seq.end(), in1));
                const auto twos = seq.size() - ones;
                Sequence kept;
                const bool to_left = ones >= twos;
                for (const auto& a : seq)
                    if (in1(a) == to_left) kept.push_back(a);
                (to_left ? left : right).add(std::move(kept), count);
                break;
            }
            case Operator::And: {
                Sequence a;
                Sequence b;
                for (const auto& x : seq) (in1(x) ? a : b).push_back(x);
                left.add(std::move(a), count);
                right.add(std::move(b), count);
                break;
            }
            case Operator::Loop: {
                if (seq.empty() || !in1(seq.front())) left.add(Sequence{}, count);
                std::size_t i = 0;
                while (i < seq.size()) {
                    const bool side = in1(seq[i]);
                    Sequence segment;
                    while (i < seq.size() && in1(seq[i]) == side) segment.push_back(seq[i++]);
                    (side ? left : right).add(std::move(segment), count);
                }
                if (!seq.empty() && !in1(seq.back())) left.add(Sequence{}, count);
                break;
            }
        }
    }
    return {std::move(left), std::move(right)};
}

namespace {

class Discoverer {
public:
    explicit Discoverer(const DiscoveryParams& params) : params_(params) {}

    ProcessTree run(const EventLog& plus, const EventLog& minus, std::size_t depth) {
        auto base = base_case(plus, [&](const EventLog& rest) {
            return run(rest, without_empty_traces(minus), depth + 1);
        });
        if (base) return std::move(*base);

        const auto& alphabet = plus.alphabet();
        const auto minus_projected = project(minus, alphabet);
        const auto g_plus = build_dfg(plus);
        const auto g_minus = build_dfg(minus_projected).restricted_to(alphabet);

        DiscoveryParams local = params_;
        local.seed = params_.seed + decisions.size();
        auto [cut, cost] = find_optimal_cut(g_plus, g_minus, local);
        decisions.push_back({cut, cost, cut_cost(g_plus, cut, params_.sup), depth});

        auto [plus1, plus2] = split_logs(plus, cut);
        auto [minus1, minus2] = split_logs(minus_projected, cut);
        std::vector<ProcessTree> kids;
        kids.push_back(run(plus1, minus1, depth + 1));
        kids.push_back(run(plus2, minus2, depth + 1));
        return ProcessTree::node(cut.op, std::move(kids));
    }

    std::vector<CutDecision> decisions;

private:
    DiscoveryParams params_;
};

}  // namespace

DiscoveryResult discover(const EventLog& log_plus, const EventLog& log_minus, const DiscoveryParams& params) {
    params.validate();
    Discoverer d(params);
    auto tree = d.run(log_plus, log_minus, 0);
    return {std::move(tree), std::move(d.decisions)};
}

}  // namespace dualminer
