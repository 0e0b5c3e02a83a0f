#include <benchmark/benchmark.h>

#include "regen/flowgraph.hpp"

using namespace regen;

static void BM_min_cut_rc_chain(benchmark::State& state) {
    auto log = flow::rc_chain_scenario(10, 7, flow::rc_alpha_c(7), 20, 42);
    auto g = flow::FlowGraph::build(log);
    auto ids = g.active_ids();
    std::vector<int> collector(ids.begin(), ids.begin() + 7);
    for (auto _ : state) benchmark::DoNotOptimize(flow::min_cut(g, collector));
}
BENCHMARK(BM_min_cut_rc_chain);

static void BM_verify_all_collectors_14_7(benchmark::State& state) {
    auto log = flow::ommds_scenario(14, 7, Rational(1, 7));
    auto g = flow::FlowGraph::build(log);
    for (auto _ : state)
        benchmark::DoNotOptimize(flow::verify_all_collectors(g, 7, Rational(1)));
}
BENCHMARK(BM_verify_all_collectors_14_7);

static void BM_threshold_ommds_14_7(benchmark::State& state) {
    auto scenario = flow::ommds_threshold_scenario(14, 7);
    for (auto _ : state) benchmark::DoNotOptimize(flow::threshold_alpha(scenario));
}
BENCHMARK(BM_threshold_ommds_14_7);

BENCHMARK_MAIN();
