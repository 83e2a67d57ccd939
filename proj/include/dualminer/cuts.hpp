#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dualminer/dfg.hpp"
#include "dualminer/process_tree.hpp"

namespace dualminer {

/// Binary partition (sigma1, sigma2) of a graph's activities tagged with an operator.
struct Cut {
    Operator op = Operator::Seq;
    AlphabetSet sigma1;
    AlphabetSet sigma2;

    friend bool operator==(const Cut&, const Cut&) = default;
};

std::string to_string(const Cut& cut);

/// Which side of a cut an activity sits on, indexed by Dfg node. 1 = sigma1, 0 = sigma2.
using SideAssignment = std::vector<std::uint8_t>;

/// Raw cost ingredients of one cut on one graph: total weight of deviating
/// (forbidden) edges, and the summed strength of unsatisfied mandatory
/// relations before scaling by sup.
///
/// Node classes used by the rules: S1/E1 are the start/end activities of
/// sigma1 (targets of start edges / sources of end edges inside sigma1).
///
///   seq : forbidden sigma2->sigma1 edges; mandatory b reachable from a for
///         every (a, b) in sigma1 x sigma2.
///   xor : forbidden all edges between the sides; mandatory each side has a
///         start edge and an end edge.
///   and : nothing forbidden; mandatory both direct edges (a,b), (b,a) for
///         every cross pair, plus start and end edges on each side.
///   loop: forbidden start->sigma2, sigma2->end, sigma1->sigma2 not leaving E1,
///         sigma2->sigma1 not entering S1; mandatory (e,b) for e in E1 and
///         (b,s) for s in S1, for every b in sigma2.
///
/// A missing pair (x, y) weighs min(out(x), in(y)); a missing start or end
/// edge for a side weighs the graph's trace count.
struct CostTerms {
    std::uint64_t deviating = 0;
    std::uint64_t missing = 0;

    double cost(double sup) const noexcept {
        return static_cast<double>(deviating) + sup * static_cast<double>(missing);
    }
};

/// Kernel over dense sides; `in_sigma1.size()` must equal `g.activity_count()`.
CostTerms cost_terms(const Dfg& g, Operator op, std::span<const std::uint8_t> in_sigma1);

/// Throws std::invalid_argument unless the cut partitions g's activities into two non-empty sides.
SideAssignment side_assignment(const Dfg& g, const Cut& cut);

double dev_cost(const Dfg& g, const Cut& cut);
/// Throws std::invalid_argument when sup is outside [0, 1].
double mis_cost(const Dfg& g, const Cut& cut, double sup);
double cut_cost(const Dfg& g, const Cut& cut, double sup);

/// cost(g_plus) - ratio * cost(g_minus). The g_minus side only sees edges
/// whose endpoints both lie in the cut's activities or start/end.
double overall_cost(const Dfg& g_plus, const Dfg& g_minus, const Cut& cut, double sup, double ratio);

}  // namespace dualminer
