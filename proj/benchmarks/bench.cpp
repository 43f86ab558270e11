#include <benchmark/benchmark.h>

#include "lpapprox/compiler.hpp"
#include "lpapprox/measures.hpp"
#include "lpapprox/monotone.hpp"
#include "lpapprox/packing.hpp"
#include "lpapprox/rng.hpp"

using namespace lpapprox;

namespace {

PiecewiseConstantFn grid_family(int d, int per_axis) {
    std::vector<Cube> cubes;
    std::vector<double> values;
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    std::uint64_t ctr = 0;
    while (true) {
        std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            lo[static_cast<std::size_t>(j)] = static_cast<double>(idx[static_cast<std::size_t>(j)]) / per_axis;
            hi[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + 1.0 / per_axis;
        }
        cubes.push_back(Cube::half_open(std::move(lo), std::move(hi)));
        values.push_back(rng::uniform01(42, ctr++));
        int axis = d - 1;
        while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == per_axis) {
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return PiecewiseConstantFn(std::move(cubes), std::move(values));
}

void BM_CompileCubes(benchmark::State& state) {
    const auto fn = grid_family(2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto net = compile_cubes(fn, false);
        benchmark::DoNotOptimize(net);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fn.piece_count()));
}
BENCHMARK(BM_CompileCubes)->Arg(4)->Arg(8)->Arg(16);

void BM_NetworkEvaluate(benchmark::State& state) {
    const auto fn = grid_family(2, static_cast<int>(state.range(0)));
    const auto net = compile_cubes(fn, false);
    std::vector<double> x(2);
    std::uint64_t i = 0;
    for (auto _ : state) {
        rng::uniform_point(7, i++, x);
        benchmark::DoNotOptimize(net.evaluate(x));
    }
}
BENCHMARK(BM_NetworkEvaluate)->Arg(4)->Arg(8);

void BM_Decompose(benchmark::State& state) {
    const auto disk = disk_indicator(2);
    const DecompositionParams params(static_cast<int>(state.range(0)), 2, 1.0);
    for (auto _ : state) {
        auto dec = decompose(disk, params);
        benchmark::DoNotOptimize(dec);
    }
}
BENCHMARK(BM_Decompose)->Arg(3)->Arg(5)->Arg(6);

void BM_ApproximantEval(benchmark::State& state) {
    const auto disk = disk_indicator(2);
    const DecompositionParams params(6, 2, 1.0);
    const auto dec = decompose(disk, params);
    const auto approx = build_fast_approximant(dec, disk);
    std::vector<double> x(2);
    std::uint64_t i = 0;
    for (auto _ : state) {
        rng::uniform_point(9, i++, x);
        benchmark::DoNotOptimize(approx(x));
    }
}
BENCHMARK(BM_ApproximantEval);

void BM_GilbertVarshamov(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto code = gilbert_varshamov_code(m, (m + 3) / 4);
        benchmark::DoNotOptimize(code);
    }
}
BENCHMARK(BM_GilbertVarshamov)->Arg(8)->Arg(16);

void BM_McDistance(benchmark::State& state) {
    const auto disk = disk_indicator(2);
    const DecompositionParams params(4, 2, 1.0);
    const auto dec = decompose(disk, params);
    const auto approx = build_fast_approximant(dec, disk);
    const auto f = approx.as_fn();
    for (auto _ : state) {
        auto est = lp_distance_mc(disk.f, f, 1.0, 2, static_cast<std::uint64_t>(state.range(0)),
                                  1234);
        benchmark::DoNotOptimize(est);
    }
}
BENCHMARK(BM_McDistance)->Arg(10000)->Arg(100000);

} // namespace

BENCHMARK_MAIN();
