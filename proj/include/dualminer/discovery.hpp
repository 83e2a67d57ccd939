#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dualminer/cuts.hpp"
#include "dualminer/event_log.hpp"
#include "dualminer/parallel.hpp"
#include "dualminer/process_tree.hpp"

namespace dualminer {

struct DiscoveryParams {
    /// Strictness towards missing mandatory relations, in [0, 1].
    double sup = 0.0;
    /// Weight of the undesirable log's cut cost, in [0, 1].
    double ratio = 0.0;
    /// Largest alphabet for which every bipartition is scored; above it the
    /// cut search switches to seeded hill-climbing.
    std::size_t exhaustive_limit = 12;
    /// Random starting points per operator for the hill-climbing search.
    std::size_t search_restarts = 32;
    std::uint64_t seed = 0;
    Execution execution = Execution::Parallel;

    /// Throws std::invalid_argument for out-of-range sup/ratio.
    void validate() const;
};

/// Upper bound on exhaustive_limit; larger alphabets always use local search.
inline constexpr std::size_t kMaxExhaustiveAlphabet = 24;

struct ScoredCut {
    Cut cut;
    double cost = 0.0;
};

/// Candidate cut set over g_plus's activities.
///
/// Exhaustive mode lists every proper bipartition under each operator:
/// sequence and loop in both orientations, choice and parallel once per
/// unordered pair (the side with fewer activities, then the lexicographically
/// smaller one, is sigma1). Local-search mode returns the distinct local
/// optima of hill-climbing runs, which need g_minus to score moves.
/// Order is deterministic. Throws std::invalid_argument when |Σ| < 2.
std::vector<Cut> enumerate_cuts(const Dfg& g_plus, const Dfg& g_minus, const DiscoveryParams& params);

/// Cut with minimum overall cost. Ties go to the operator order
/// seq, xor, and, loop; then the smaller sigma1; then the lexicographically
/// smaller sigma1. `g_minus` is restricted to g_plus's activities first.
ScoredCut find_optimal_cut(const Dfg& g_plus, const Dfg& g_minus, const DiscoveryParams& params);

using Recurse = std::function<ProcessTree(const EventLog&)>;

/// Base cases, checked in order:
///   no traces, or only empty ones      -> tau
///   empty traces next to non-empty     -> X(tau, recurse(log without empty traces))
///   every trace is <a>                 -> 'a'
///   alphabet {a}, some trace repeats a -> *('a', tau)
std::optional<ProcessTree> base_case(const EventLog& log, const Recurse& recurse);

/// Splits a log along a cut. Events outside the cut's activities are dropped first.
///
///   seq : split each trace where the count of sigma2 events before plus
///         sigma1 events after is smallest (earliest on ties)
///   xor : whole trace to the side with the strict majority of its events
///         (sigma1 on ties), the other side's events dropped
///   and : projection onto each side
///   loop: maximal same-side segments; sigma1 segments go left, sigma2 right,
///         and a trace that does not start/end in sigma1 adds an empty
///         do-segment at that boundary
std::pair<EventLog, EventLog> split_logs(const EventLog& log, const Cut& cut);

struct CutDecision {
    Cut cut;
    double overall_cost = 0.0;
    /// cut_cost on the desirable log's graph alone
    double plus_cost = 0.0;
    std::size_t depth = 0;
};

struct DiscoveryResult {
    ProcessTree tree;
    std::vector<CutDecision> decisions;
};

/// Recursive discovery from a desirable and an undesirable log.
DiscoveryResult discover(const EventLog& log_plus, const EventLog& log_minus, const DiscoveryParams& params);

}  // namespace dualminer
