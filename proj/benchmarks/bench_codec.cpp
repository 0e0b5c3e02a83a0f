#include <benchmark/benchmark.h>

#include "regen/codec.hpp"
#include "regen/rng.hpp"

using namespace regen;

static std::vector<std::uint8_t> random_file(std::size_t len, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> f(len);
    for (auto& b : f) b = rng.byte();
    return f;
}

static void BM_encode_rc_k7(benchmark::State& state) {
    auto params = codec::CodeParams::make(codec::Scheme::Rc, 7, 14);
    auto file = random_file(static_cast<std::size_t>(state.range(0)), 1);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(codec::encode(file, params, ++seed));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_encode_rc_k7)->Arg(43 * 64)->Arg(43 * 4096);

static void BM_reconstruct_rc_k7(benchmark::State& state) {
    auto params = codec::CodeParams::make(codec::Scheme::Rc, 7, 14);
    auto file = random_file(static_cast<std::size_t>(state.range(0)), 2);
    auto fragments = codec::encode(file, params, 99);
    std::vector<codec::Fragment> pick(fragments.begin(), fragments.begin() + params.k);
    for (auto _ : state) benchmark::DoNotOptimize(codec::reconstruct(pick, params));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_reconstruct_rc_k7)->Arg(43 * 64)->Arg(43 * 4096);

static void BM_rc_repair_k7(benchmark::State& state) {
    auto params = codec::CodeParams::make(codec::Scheme::Rc, 7, 14);
    auto file = random_file(43 * 256, 3);
    auto fragments = codec::encode(file, params, 5);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        std::vector<codec::RepairResponse> responses;
        for (int h = 1; h <= params.k; ++h)
            responses.push_back(codec::helper_respond(fragments[h], 1, ++seed));
        benchmark::DoNotOptimize(codec::regenerate_rc(responses, params, 99, seed));
    }
}
BENCHMARK(BM_rc_repair_k7);
