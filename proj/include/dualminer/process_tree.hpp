#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualminer/event_log.hpp"

namespace dualminer {

enum class Operator { Seq, Xor, And, Loop };

/// `->`, `X`, `+`, `*`
std::string_view operator_symbol(Operator op) noexcept;
std::string_view operator_name(Operator op) noexcept;

/// Block-structured process model: a leaf activity, a silent step, or an
/// operator node with ordered children.
///
/// Sequence, choice and parallel nodes have at least two children; a loop has
/// exactly two, the do-part and the redo-part. A loop executes its do-part,
/// then zero or more (redo, do) rounds.
class ProcessTree {
public:
    enum class Kind { Leaf, Tau, Node };

    static ProcessTree leaf(Activity a);
    static ProcessTree tau();
    /// Throws std::invalid_argument on an arity violation.
    static ProcessTree node(Operator op, std::vector<ProcessTree> children);

    Kind kind() const noexcept { return kind_; }
    bool is_leaf() const noexcept { return kind_ == Kind::Leaf; }
    bool is_tau() const noexcept { return kind_ == Kind::Tau; }
    const Activity& activity() const;
    Operator op() const;
    const std::vector<ProcessTree>& children() const noexcept { return children_; }

    /// Activities on the leaves.
    AlphabetSet alphabet() const;
    std::size_t depth() const noexcept;
    std::size_t size() const noexcept;

    friend bool operator==(const ProcessTree& a, const ProcessTree& b);

private:
    ProcessTree(Kind kind, std::optional<Activity> activity, Operator op, std::vector<ProcessTree> children)
        : kind_(kind), activity_(std::move(activity)), op_(op), children_(std::move(children)) {}

    Kind kind_;
    std::optional<Activity> activity_;
    Operator op_;
    std::vector<ProcessTree> children_;
};

/// `->('a', X('b', tau))`. Leaf names are single-quoted with `\` escapes.
std::string to_text(const ProcessTree& tree);

/// Inverse of to_text. Whitespace between tokens is ignored.
/// Throws ParseError (with 1-based column) on syntax errors and arity violations.
ProcessTree parse_tree_text(std::string_view text);

/// Samples `n` traces from the tree's language.
///
/// Choices are uniform: an exclusive branch, a loop's redo count in
/// [0, max_loop_unroll], and a parallel node's interleaving (uniform over all
/// merges of the sampled child traces). Deterministic for a given seed.
EventLog simulate(const ProcessTree& tree, std::size_t n, std::size_t max_loop_unroll, std::uint64_t seed);

}  // namespace dualminer
