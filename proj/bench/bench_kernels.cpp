#include <random>

#include <benchmark/benchmark.h>

#include "vbetti/fixtures.hpp"
#include "vbetti/gf2.hpp"
#include "vbetti/gf2_reference.hpp"
#include "vbetti/weights.hpp"

namespace {

using namespace vbetti;

gf2::Matrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    gf2::Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rng() & 1u) m.set(r, c);
    return m;
}

void BM_RankSerial(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(gf2::rank(m, Exec::serial));
}

void BM_RankParallel(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(gf2::rank(m, Exec::parallel));
}

void BM_RankReference(benchmark::State& state) {
    const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(gf2::reference::rank(m));
}

void BM_SurfacePages(benchmark::State& state) {
    SceneEvaluator ev(fixtures::builtin_scene());
    const Arrangement a = ev.arrangement("surface-443");
    const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
    for (auto _ : state) benchmark::DoNotOptimize(spectral_sequence(a, 4, exec).stabilization_page);
}

void BM_WeightSystem(benchmark::State& state) {
    const WeightSystemInput input{{2, 6, 12, 8}, {2, 0, 4, 8}};
    const Exec exec = state.range(0) ? Exec::parallel : Exec::serial;
    for (auto _ : state) benchmark::DoNotOptimize(solve_weight_system(input, exec).size());
}

} // namespace

BENCHMARK(BM_RankSerial)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_RankParallel)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_RankReference)->Arg(128)->Arg(512);
BENCHMARK(BM_SurfacePages)->Arg(0)->Arg(1);
BENCHMARK(BM_WeightSystem)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
