#include <gtest/gtest.h>

#include <random>

#include "dualminer/dfg.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dualminer;
using dualminer::testing::log;

namespace {

std::string oracle_name(const Dfg& g, Dfg::Node n) {
    if (n == g.start()) return oracle::kStart;
    if (n == g.end()) return oracle::kEnd;
    return g.activity(n).name();
}

void expect_matches_oracle(const EventLog& l) {
    const auto g = build_dfg(l);
    const auto pc = oracle::count_pairs(l);
    EXPECT_EQ(g.trace_count(), pc.traces);
    for (Dfg::Node x = 0; x < g.node_count(); ++x)
        for (Dfg::Node y = 0; y < g.node_count(); ++y) {
            const auto xn = oracle_name(g, x);
            const auto yn = oracle_name(g, y);
            EXPECT_EQ(g.weight(x, y), pc.at(xn, yn)) << xn << "->" << yn;
            EXPECT_EQ(g.reachable(x, y), oracle::reachable(pc, xn, yn)) << xn << "~>" << yn;
        }
}

}  // namespace

TEST(BuildDfg, SingleTrace) {
    auto g = build_dfg(log("a"));
    const auto a = g.node(Activity("a"));
    EXPECT_EQ(g.weight(g.start(), a), 1u);
    EXPECT_EQ(g.weight(a, g.end()), 1u);
    EXPECT_EQ(g.total_weight(), 2u);
    EXPECT_EQ(g.frequency(a), 1u);
}

TEST(BuildDfg, EmptyLog) {
    auto g = build_dfg(EventLog{});
    EXPECT_EQ(g.activity_count(), 0u);
    EXPECT_EQ(g.node_count(), 2u);
    EXPECT_EQ(g.total_weight(), 0u);
}

TEST(BuildDfg, EmptyTraceLinksStartToEnd) {
    auto g = build_dfg(log("^3\na"));
    EXPECT_EQ(g.weight(g.start(), g.end()), 3u);
    EXPECT_EQ(g.trace_count(), 4u);
}

TEST(BuildDfg, MotivatingLogWeights) {
    auto g = build_dfg(dualminer::testing::motivating_plus());
    EXPECT_EQ(g.weight(g.start(), g.node(Activity("a"))), 50u);
    EXPECT_EQ(g.weight(Activity("b"), Activity("d")), 50u);
    EXPECT_EQ(g.weight(g.node(Activity("d")), g.end()), 45u);
    expect_matches_oracle(dualminer::testing::motivating_plus());
    expect_matches_oracle(dualminer::testing::motivating_minus());
}

TEST(BuildDfg, MatchesPairCountingOnRandomLogs) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) expect_matches_oracle(dualminer::testing::random_log(rng));
}

TEST(BuildDfg, StartEndInvariants) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 30; ++i) {
        auto l = dualminer::testing::random_log(rng);
        auto g = build_dfg(l);
        EXPECT_EQ(g.out_weight(g.start()), l.total_count());
        EXPECT_EQ(g.in_weight(g.end()), l.total_count());
        EXPECT_EQ(g.in_weight(g.start()), 0u);
        EXPECT_EQ(g.out_weight(g.end()), 0u);
        for (Dfg::Node a = 0; a < g.activity_count(); ++a) {
            EXPECT_GT(g.in_weight(a), 0u);
            EXPECT_GT(g.out_weight(a), 0u);
            EXPECT_EQ(g.in_weight(a), g.frequency(a));
            EXPECT_EQ(g.out_weight(a), g.frequency(a));
        }
    }
}

TEST(Reachable, NeedsAtLeastOneEdge) {
    auto g = build_dfg(log("a,b,c"));
    EXPECT_TRUE(g.reachable(Activity("a"), Activity("c")));
    EXPECT_FALSE(g.reachable(Activity("c"), Activity("a")));
    EXPECT_FALSE(g.reachable(Activity("a"), Activity("a")));
    EXPECT_TRUE(build_dfg(log("a,b,a")).reachable(Activity("a"), Activity("a")));
    EXPECT_THROW(g.reachable(Activity("a"), Activity("zz")), std::invalid_argument);
}

TEST(Dfg, AddEdgeRejectsReservedDirectionsAndKeepsReachabilityCurrent) {
    Dfg g(AlphabetSet{Activity("a"), Activity("b")});
    const auto a = g.node(Activity("a"));
    const auto b = g.node(Activity("b"));
    EXPECT_THROW(g.add_edge(a, g.start(), 1), std::invalid_argument);
    EXPECT_THROW(g.add_edge(g.end(), a, 1), std::invalid_argument);
    EXPECT_FALSE(g.reachable(a, b));
    g.add_edge(a, b, 2);
    EXPECT_TRUE(g.reachable(a, b));
    EXPECT_EQ(g.out_weight(a), 2u);
    EXPECT_EQ(g.in_weight(b), 2u);
}

TEST(Dfg, ScaledMultipliesEverything) {
    auto g = build_dfg(dualminer::testing::motivating_plus());
    auto s = g.scaled(7);
    EXPECT_EQ(s.trace_count(), 700u);
    for (Dfg::Node x = 0; x < g.node_count(); ++x) {
        EXPECT_EQ(s.frequency(x), 7 * g.frequency(x));
        for (Dfg::Node y = 0; y < g.node_count(); ++y) EXPECT_EQ(s.weight(x, y), 7 * g.weight(x, y));
    }
}

TEST(Dfg, RestrictedToDropsForeignEdges) {
    auto g = build_dfg(log("a,x,b^2\na,b"));
    auto r = g.restricted_to(AlphabetSet{Activity("a"), Activity("b"), Activity("c")});
    EXPECT_EQ(r.activity_count(), 3u);
    EXPECT_EQ(r.weight(Activity("a"), Activity("b")), 1u);
    EXPECT_EQ(r.weight(r.start(), r.node(Activity("a"))), 3u);
    EXPECT_EQ(r.in_weight(r.node(Activity("c"))), 0u);
    EXPECT_EQ(r.trace_count(), 3u);
    EXPECT_FALSE(r.contains(Activity("x")));
}

TEST(Dfg, DotOutputMentionsEdges) {
    auto dot = build_dfg(log("a,b")).to_dot();
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("n0 -> n1 [label=\"1\"]"), std::string::npos) << dot;
}
