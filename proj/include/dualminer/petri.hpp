#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualminer/activity.hpp"
#include "dualminer/process_tree.hpp"

namespace dualminer {

/// Token counts per place, indexed like PetriNet::places().
class Marking {
public:
    Marking() = default;
    explicit Marking(std::size_t places) : tokens_(places, 0) {}

    std::size_t size() const noexcept { return tokens_.size(); }
    std::uint32_t operator[](std::size_t place) const { return tokens_.at(place); }
    std::uint32_t& operator[](std::size_t place) { return tokens_.at(place); }
    const std::vector<std::uint32_t>& tokens() const noexcept { return tokens_; }
    std::size_t total() const noexcept;

    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking&, const Marking&) = default;

private:
    std::vector<std::uint32_t> tokens_;
};

struct MarkingHash {
    std::size_t operator()(const Marking& m) const noexcept;
};

struct Transition {
    std::string id;
    /// Absent for silent transitions.
    std::optional<Activity> label;

    bool silent() const noexcept { return !label.has_value(); }
    friend bool operator==(const Transition&, const Transition&) = default;
};

/// Place/transition net with unit arc weights, plus initial and final markings.
class PetriNet {
public:
    using Index = std::size_t;

    Index add_place(std::string id);
    Index add_transition(std::string id, std::optional<Activity> label);
    void add_arc_place_to_transition(Index place, Index transition);
    void add_arc_transition_to_place(Index transition, Index place);

    const std::vector<std::string>& places() const noexcept { return places_; }
    const std::vector<Transition>& transitions() const noexcept { return transitions_; }
    /// Input places of a transition.
    const std::vector<Index>& preset(Index transition) const { return pre_.at(transition); }
    /// Output places of a transition.
    const std::vector<Index>& postset(Index transition) const { return post_.at(transition); }
    std::size_t arc_count() const noexcept;

    const Marking& initial_marking() const noexcept { return initial_; }
    const Marking& final_marking() const noexcept { return final_; }
    void set_initial_marking(Marking m);
    void set_final_marking(Marking m);

    std::optional<Index> find_place(std::string_view id) const;
    std::optional<Index> find_transition(std::string_view id) const;

    /// Unique source and sink place, initial marking = one token on the
    /// source, final = one on the sink, and every node on a source-to-sink path.
    bool is_workflow_net() const;

    friend bool operator==(const PetriNet&, const PetriNet&) = default;

private:
    std::vector<std::string> places_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<Index>> pre_;
    std::vector<std::vector<Index>> post_;
    Marking initial_;
    Marking final_;
};

/// Workflow net with the same language as the tree (silent steps elided).
///
/// Leaves and tau become single transitions; sequences chain through fresh
/// places; choices share their entry and exit places; parallel nodes get a
/// silent split and join; loops get silent entry/exit transitions around an
/// inner pair of places so the redo part can never skip the do part.
/// Places are named p0, p1, ... and transitions t0, t1, ... in construction order.
PetriNet tree_to_petri(const ProcessTree& tree);

/// Transitions whose input places all hold a token, in index order.
/// Throws std::invalid_argument when the marking does not belong to the net.
std::vector<PetriNet::Index> enabled(const PetriNet& net, const Marking& m);

/// Throws std::logic_error when the transition is not enabled.
Marking fire(const PetriNet& net, const Marking& m, PetriNet::Index transition);

/// PNML 2009 place/transition net. Silent transitions have no name and carry
/// the `$invisible$` tool-specific marker; the final marking is written as
/// a `<finalmarkings>` block.
std::string export_pnml(const PetriNet& net);

/// Reads what export_pnml writes, plus nets from common tools: a transition is
/// silent if it has no name or is marked `$invisible$`. Without an explicit
/// final marking, the unique place without outgoing arcs receives one token.
PetriNet import_pnml(std::string_view xml);

}  // namespace dualminer
