#include <benchmark/benchmark.h>

#include "regen/matrix.hpp"
#include "regen/rng.hpp"

using namespace regen;

static gf::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    gf::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (auto& b : m.row(r)) b = rng.byte();
    return m;
}

static void BM_gf_mul(benchmark::State& state) {
    Rng rng(7);
    std::uint8_t acc = 1;
    for (auto _ : state) acc = gf::mul(acc | 1, rng.byte() | 1);
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_gf_mul);

static void BM_row_scaled_add(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::uint8_t> dst(n, 3), src(n, 5);
    for (auto _ : state) {
        gf::add_scaled_row(dst, src, 0x53);
        benchmark::DoNotOptimize(dst.data());
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * n);
}
BENCHMARK(BM_row_scaled_add)->Arg(64)->Arg(4096)->Arg(65536);

static void BM_matrix_rank_49x43(benchmark::State& state) {
    gf::Matrix m = random_matrix(49, 43, 11);
    for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_matrix_rank_49x43);

static void BM_matrix_solve_49x43(benchmark::State& state) {
    gf::Matrix a = random_matrix(49, 43, 13);
    gf::Matrix x = random_matrix(43, 16, 17);
    gf::Matrix rhs = a * x;
    for (auto _ : state) benchmark::DoNotOptimize(a.solve(rhs));
}
BENCHMARK(BM_matrix_solve_49x43);
