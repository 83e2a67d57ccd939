// Serial reference vs OpenMP kernels: exhaustive cut search and log replay.
#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "dualminer/conformance.hpp"
#include "dualminer/discovery.hpp"
#include "dualminer/petri.hpp"

using namespace dualminer;

namespace {

EventLog noise_log(std::size_t alphabet, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Activity> acts;
    for (std::size_t i = 0; i < alphabet; ++i) acts.emplace_back(std::string(1, static_cast<char>('a' + i)));
    EventLog log;
    for (int v = 0; v < 200; ++v) {
        Sequence s;
        for (std::size_t len = 1 + rng() % 12; len > 0; --len) s.push_back(acts[rng() % acts.size()]);
        log.add(std::move(s), 1 + rng() % 5);
    }
    return log;
}

// ->(x(a, b), *(+(c, d), e), ...) style model over `alphabet` letters
ProcessTree bench_tree(std::size_t alphabet) {
    std::vector<ProcessTree> blocks;
    for (std::size_t i = 0; i + 1 < alphabet; i += 2) {
        auto a = ProcessTree::leaf(Activity(std::string(1, static_cast<char>('a' + i))));
        auto b = ProcessTree::leaf(Activity(std::string(1, static_cast<char>('a' + i + 1))));
        const Operator op = (i / 2) % 3 == 0 ? Operator::Xor : (i / 2) % 3 == 1 ? Operator::And : Operator::Loop;
        blocks.push_back(ProcessTree::node(op, {std::move(a), std::move(b)}));
    }
    while (blocks.size() > 1) {
        auto right = std::move(blocks.back());
        blocks.pop_back();
        auto left = std::move(blocks.back());
        blocks.pop_back();
        blocks.push_back(ProcessTree::node(Operator::Seq, {std::move(left), std::move(right)}));
    }
    return blocks.front();
}

void BM_FindOptimalCut(benchmark::State& state, Execution execution) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto plus = build_dfg(noise_log(n, 1));
    const auto minus = build_dfg(noise_log(n, 2));
    DiscoveryParams p;
    p.sup = 0.5;
    p.ratio = 0.5;
    p.exhaustive_limit = n;
    p.execution = execution;
    for (auto _ : state) benchmark::DoNotOptimize(find_optimal_cut(plus, minus, p));
    state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << (n - 1)) - 1));
}

void BM_Replay(benchmark::State& state, Execution execution) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto net = tree_to_petri(bench_tree(n));
    const auto log = noise_log(n, 3);
    ConformanceOptions options;
    options.execution = execution;
    for (auto _ : state) benchmark::DoNotOptimize(replay(log, net, options));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(log.distinct_count()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_FindOptimalCut, serial, Execution::Serial)->DenseRange(10, 14, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FindOptimalCut, parallel, Execution::Parallel)->DenseRange(10, 14, 2)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Replay, serial, Execution::Serial)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Replay, parallel, Execution::Parallel)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
