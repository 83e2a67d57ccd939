#pragma once

// Random instances shared by the unit tests, the acceptance suite and the benchmark.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dualminer/event_log.hpp"
#include "dualminer/process_tree.hpp"

namespace dualminer::testing {

inline std::vector<Activity> letters(std::size_t n) {
    std::vector<Activity> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

struct TreeShape {
    std::size_t max_depth = 4;
    std::size_t max_leaves = 8;
    /// Chance that a leaf slot is a silent step instead of an activity.
    double tau_probability = 0.0;
};

namespace detail {

inline ProcessTree build_tree(std::vector<Activity> acts, std::size_t depth_left, double tau_p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (acts.size() == 1) {
        if (depth_left >= 2 && unit(rng) < tau_p) {
            std::vector<ProcessTree> kids{ProcessTree::leaf(acts[0]), ProcessTree::tau()};
            std::uniform_int_distribution<int> order(0, 1);
            if (order(rng)) std::swap(kids[0], kids[1]);
            static constexpr Operator ops[] = {Operator::Seq, Operator::Xor, Operator::And, Operator::Loop};
            std::uniform_int_distribution<int> pick(0, 3);
            return ProcessTree::node(ops[pick(rng)], std::move(kids));
        }
        return ProcessTree::leaf(acts[0]);
    }
    // each side must fit in a binary tree of height depth_left - 1
    const std::size_t cap = std::size_t{1} << (depth_left - 2);
    const std::size_t lo = acts.size() > cap ? acts.size() - cap : 1;
    const std::size_t hi = std::min(cap, acts.size() - 1);
    std::uniform_int_distribution<std::size_t> split(lo, hi);
    const auto k = split(rng);
    std::vector<Activity> left(acts.begin(), acts.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Activity> right(acts.begin() + static_cast<std::ptrdiff_t>(k), acts.end());
    static constexpr Operator ops[] = {Operator::Seq, Operator::Xor, Operator::And, Operator::Loop};
    std::uniform_int_distribution<int> pick(0, 3);
    std::vector<ProcessTree> kids;
    kids.push_back(build_tree(std::move(left), depth_left - 1, tau_p, rng));
    kids.push_back(build_tree(std::move(right), depth_left - 1, tau_p, rng));
    return ProcessTree::node(ops[pick(rng)], std::move(kids));
}

}  // namespace detail

/// Binary tree with distinct activity leaves, 2..max_leaves activities, depth <= max_depth.
inline ProcessTree random_tree(std::mt19937_64& rng, const TreeShape& shape = {}) {
    const std::size_t max_leaves = std::min(shape.max_leaves, std::size_t{1} << (shape.max_depth - 1));
    std::uniform_int_distribution<std::size_t> count(2, max_leaves);
    auto acts = letters(count(rng));
    std::shuffle(acts.begin(), acts.end(), rng);
    return detail::build_tree(std::move(acts), shape.max_depth, shape.tau_probability, rng);
}

struct LogShape {
    std::size_t alphabet = 5;
    std::size_t variants = 8;
    std::size_t max_length = 7;
    std::size_t max_count = 6;
};

/// Unstructured random log over the first `alphabet` letters.
inline EventLog random_log(std::mt19937_64& rng, const LogShape& shape = {}) {
    const auto acts = letters(shape.alphabet);
    std::uniform_int_distribution<std::size_t> pick(0, acts.size() - 1);
    std::uniform_int_distribution<std::size_t> length(1, shape.max_length);
    std::uniform_int_distribution<std::size_t> count(1, shape.max_count);
    EventLog log;
    // make sure every activity occurs at least once
    for (const auto& a : acts) log.add(Sequence{a}, count(rng));
    for (std::size_t v = 0; v < shape.variants; ++v) {
        Sequence seq;
        auto len = length(rng);
        for (std::size_t i = 0; i < len; ++i) seq.push_back(acts[pick(rng)]);
        log.add(std::move(seq), count(rng));
    }
    return log;
}

/// A desirable log drawn from a random tree and an undesirable one that mixes
/// noise into the same alphabet.
struct LogPair {
    EventLog plus;
    EventLog minus;
};

inline LogPair random_log_pair(std::mt19937_64& rng, std::size_t alphabet) {
    LogShape shape;
    shape.alphabet = alphabet;
    LogPair pair{random_log(rng, shape), {}};
    shape.variants = 6;
    pair.minus = random_log(rng, shape);
    return pair;
}

}  // namespace dualminer::testing
