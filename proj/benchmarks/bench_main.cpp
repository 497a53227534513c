#include <benchmark/benchmark.h>

#include "ridgeframe/decomposition.hpp"
#include "ridgeframe/fixtures.hpp"
#include "ridgeframe/generators.hpp"
#include "ridgeframe/ridge_radon.hpp"
#include "ridgeframe/sphere_net.hpp"
#include "ridgeframe/spectral.hpp"

using namespace ridgeframe;

static void BM_ForwardFT(benchmark::State& state) {
    const Grid1D grid = Grid1D::centered(64.0, static_cast<std::size_t>(state.range(0)));
    const auto s = GeneratorSpec::meyer().sample(grid);
    for (auto _ : state) benchmark::DoNotOptimize(forward_ft(s));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ForwardFT)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_FracDiff(benchmark::State& state) {
    const Grid1D grid = Grid1D::centered(64.0, 8192);
    const auto s = GeneratorSpec::meyer().sample(grid);
    for (auto _ : state) benchmark::DoNotOptimize(frac_diff(s, 0.5));
}
BENCHMARK(BM_FracDiff);

static void BM_RadonSlice(benchmark::State& state) {
    const auto f = random_bump_field(2, static_cast<std::size_t>(state.range(0)), 1);
    const Direction u = Direction::from_angle(0.3);
    for (auto _ : state) benchmark::DoNotOptimize(radon_slice(f, u));
}
BENCHMARK(BM_RadonSlice)->Arg(64)->Arg(128)->Arg(256);

static void BM_RadonDirect(benchmark::State& state) {
    const auto f = random_bump_field(2, static_cast<std::size_t>(state.range(0)), 1);
    const Direction u = Direction::from_angle(0.3);
    for (auto _ : state) benchmark::DoNotOptimize(radon_direct(f, u));
}
BENCHMARK(BM_RadonDirect)->Arg(64)->Arg(128)->Arg(256);

static void BM_Analyze(benchmark::State& state) {
    const auto f = gaussian_field(2, 128, 0.35);
    const auto dirs = DirectionSet::uniform(2, static_cast<std::size_t>(state.range(0)));
    const FrameSystem sys(plan_semidiscrete(f, dirs));
    for (auto _ : state) benchmark::DoNotOptimize(analyze(f, sys, dirs));
}
BENCHMARK(BM_Analyze)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SphereNet(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_net(3, static_cast<int>(state.range(0)), 2.0));
}
BENCHMARK(BM_SphereNet)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
