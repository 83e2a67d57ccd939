#include <gtest/gtest.h>

#include <random>

#include "dualminer/errors.hpp"
#include "dualminer/process_tree.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dualminer;

namespace {

ProcessTree L(const char* a) { return ProcessTree::leaf(Activity(a)); }
ProcessTree N(Operator op, std::vector<ProcessTree> kids) { return ProcessTree::node(op, std::move(kids)); }

}  // namespace

TEST(TreeText, CanonicalForms) {
    EXPECT_EQ(to_text(L("a")), "'a'");
    EXPECT_EQ(to_text(N(Operator::Seq, {L("a"), N(Operator::Xor, {L("b"), ProcessTree::tau()})})),
              "->('a', X('b', tau))");
    EXPECT_EQ(to_text(N(Operator::Loop, {L("a"), L("b")})), "*('a', 'b')");
    EXPECT_EQ(to_text(N(Operator::And, {L("a"), L("b"), L("c")})), "+('a', 'b', 'c')");
}

TEST(TreeText, Parses) {
    EXPECT_EQ(parse_tree_text("tau"), ProcessTree::tau());
    EXPECT_EQ(parse_tree_text("->('a','b')"), N(Operator::Seq, {L("a"), L("b")}));
    EXPECT_EQ(parse_tree_text("  X ( 'a' , tau ) "), N(Operator::Xor, {L("a"), ProcessTree::tau()}));
    EXPECT_EQ(parse_tree_text(R"('it\'s')"), L("it's"));
}

TEST(TreeText, ArityAndSyntaxErrorsCarryColumns) {
    try {
        parse_tree_text("*('a')");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("arity"), std::string::npos) << e.what();
        EXPECT_GT(e.column(), 0u);
    }
    EXPECT_THROW(parse_tree_text("->('a')"), ParseError);
    EXPECT_THROW(parse_tree_text("->('a', 'b'"), ParseError);
    EXPECT_THROW(parse_tree_text("'a' 'b'"), ParseError);
    EXPECT_THROW(parse_tree_text("?('a','b')"), ParseError);
    EXPECT_THROW(parse_tree_text("'unterminated"), ParseError);
}

TEST(TreeText, RoundTripsRandomTrees) {
    std::mt19937_64 rng(21);
    dualminer::testing::TreeShape shape;
    shape.tau_probability = 0.3;
    for (int i = 0; i < 100; ++i) {
        auto t = dualminer::testing::random_tree(rng, shape);
        EXPECT_EQ(parse_tree_text(to_text(t)), t) << to_text(t);
    }
}

TEST(ProcessTree, NodeArityChecks) {
    EXPECT_THROW(N(Operator::Seq, {L("a")}), std::invalid_argument);
    EXPECT_THROW(N(Operator::Loop, {L("a"), L("b"), L("c")}), std::invalid_argument);
    auto t = N(Operator::Seq, {L("a"), N(Operator::Xor, {L("b"), ProcessTree::tau()})});
    EXPECT_EQ(t.alphabet(), (AlphabetSet{Activity("a"), Activity("b")}));
    EXPECT_EQ(t.depth(), 3u);
    EXPECT_EQ(t.size(), 5u);
    EXPECT_THROW(ProcessTree::tau().activity(), std::logic_error);
}

TEST(RandomTrees, RespectShape) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        auto t = dualminer::testing::random_tree(rng);
        EXPECT_LE(t.depth(), 4u);
        EXPECT_GE(t.alphabet().size(), 2u);
        EXPECT_LE(t.alphabet().size(), 8u);
    }
}

TEST(Simulate, DeterministicTrees) {
    auto seq = N(Operator::Seq, {L("a"), L("b")});
    auto l = simulate(seq, 5, 3, 1);
    EXPECT_EQ(l.total_count(), 5u);
    EXPECT_EQ(l.count(Sequence{Activity("a"), Activity("b")}), 5u);
    EXPECT_TRUE(simulate(seq, 0, 3, 1).empty());
}

TEST(Simulate, ChoiceOnlyEmitsBranches) {
    auto l = simulate(N(Operator::Xor, {L("a"), L("b")}), 200, 3, 4);
    EXPECT_EQ(l.count(Sequence{Activity("a")}) + l.count(Sequence{Activity("b")}), 200u);
    EXPECT_GT(l.count(Sequence{Activity("a")}), 0u);
    EXPECT_GT(l.count(Sequence{Activity("b")}), 0u);
}

TEST(Simulate, LoopLanguageIsBoundedByUnroll) {
    auto loop = N(Operator::Loop, {L("a"), L("b")});
    // do (redo do)^k for k <= 2
    const oracle::Language expected{{"a"}, {"a", "b", "a"}, {"a", "b", "a", "b", "a"}};
    auto l = simulate(loop, 300, 2, 8);
    for (const auto& [seq, v] : l) EXPECT_TRUE(expected.count(oracle::words(seq))) << sequence_to_string(seq);
    EXPECT_EQ(l.distinct_count(), 3u);
}

TEST(Simulate, IsSeededAndStaysInLanguage) {
    std::mt19937_64 rng(33);
    dualminer::testing::TreeShape shape;
    shape.tau_probability = 0.2;
    for (int i = 0; i < 40; ++i) {
        auto t = dualminer::testing::random_tree(rng, shape);
        auto l = simulate(t, 60, 2, static_cast<std::uint64_t>(i));
        EXPECT_EQ(l, simulate(t, 60, 2, static_cast<std::uint64_t>(i)));
        for (const auto& [seq, v] : l) EXPECT_TRUE(oracle::accepts(t, oracle::words(seq))) << to_text(t);
    }
}

TEST(Simulate, MembershipOracleAgreesWithBoundedLanguage) {
    std::mt19937_64 rng(34);
    dualminer::testing::TreeShape shape;
    shape.max_leaves = 4;
    shape.tau_probability = 0.3;
    for (int i = 0; i < 30; ++i) {
        auto t = dualminer::testing::random_tree(rng, shape);
        const auto lang = oracle::language(t, 4);
        std::vector<std::string> sigma;
        for (const auto& a : t.alphabet()) sigma.push_back(a.name());
        std::vector<oracle::Word> frontier{{}};
        for (std::size_t len = 0; len <= 4; ++len) {
            std::vector<oracle::Word> next;
            for (const auto& w : frontier) {
                EXPECT_EQ(oracle::accepts(t, w), lang.count(w) > 0) << to_text(t);
                for (const auto& x : sigma) {
                    next.push_back(w);
                    next.back().push_back(x);
                }
            }
            frontier = std::move(next);
        }
    }
}

TEST(Simulate, ParallelInterleavingsAllAppear) {
    auto t = N(Operator::And, {L("a"), N(Operator::Seq, {L("b"), L("c")})});
    auto l = simulate(t, 600, 0, 2);
    EXPECT_EQ(l.distinct_count(), 3u);
}
