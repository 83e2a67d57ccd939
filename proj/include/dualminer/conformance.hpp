#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dualminer/event_log.hpp"
#include "dualminer/parallel.hpp"
#include "dualminer/petri.hpp"

namespace dualminer {

struct AlignmentMove {
    enum class Kind { Log, Model, Sync, Silent };
    Kind kind;
    /// Set for log and sync moves.
    std::optional<Activity> activity;
    /// Set for model, sync and silent moves.
    std::optional<PetriNet::Index> transition;

    friend bool operator==(const AlignmentMove&, const AlignmentMove&) = default;
};

/// Log moves and visible model moves cost 1; sync and silent moves are free.
struct Alignment {
    std::vector<AlignmentMove> moves;
    double cost = 0.0;
};

struct ConformanceOptions {
    /// Queue pops allowed per alignment before giving up with ResourceError.
    std::size_t state_budget = 1'000'000;
    Execution execution = Execution::Parallel;
};

/// Minimum-cost alignment of `trace` against the net's runs from the initial
/// to the final marking. Uniform-cost search over (trace position, marking).
Alignment optimal_alignment(const Sequence& trace, const PetriNet& net, std::size_t state_budget = 1'000'000);

/// Fewest visible transitions on any run from the initial to the final marking.
std::size_t shortest_model_path(const PetriNet& net, std::size_t state_budget = 1'000'000);

struct ReplayResult {
    /// Multiplicity-weighted mean of 1 - cost / (|trace| + shortest model path).
    double align_fitness = 0.0;
    /// Multiplicity-weighted share of traces with a zero-cost alignment.
    double trace_fitness = 0.0;
    /// Alignment cost per distinct variant, in log order.
    std::vector<double> variant_costs;
};

/// Aligns every distinct variant once. Throws std::invalid_argument for an empty log.
ReplayResult replay(const EventLog& log, const PetriNet& net, const ConformanceOptions& options = {});

double align_fitness(const EventLog& log, const PetriNet& net, const ConformanceOptions& options = {});
double trace_fitness(const EventLog& log, const PetriNet& net, const ConformanceOptions& options = {});

/// Escaping-edges precision over the log's prefix automaton.
///
/// Each prefix is replayed on the net with silent closure. Where replay
/// succeeds, allowed = visible labels enabled in the closure, plus an end
/// marker if the final marking is in it; used = labels continuing the prefix
/// in the log, plus the end marker if some trace stops there and the final
/// marking is reachable. Prefixes that cannot be replayed are skipped along
/// with their extensions. Throws std::domain_error if nothing was replayable.
double etc_precision(const EventLog& log, const PetriNet& net, std::size_t state_budget = 1'000'000);

}  // namespace dualminer
