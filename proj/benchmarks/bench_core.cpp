#include <benchmark/benchmark.h>

#include "affdecomp/decomposition.hpp"
#include "affdecomp/geometry_check.hpp"
#include "affdecomp/minors.hpp"

using namespace affdecomp;

namespace {

Curve cubic_curve() {
    return Curve::polynomial_curve({{0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}},
                                   Interval(0.0, 1.0), 4.0);
}

void BM_Torsion(benchmark::State& state) {
    Curve curve = Curve::moment_curve(static_cast<int>(state.range(0)), Interval(0, 1));
    double t = 0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(torsion(curve, t));
        t = t < 0.9 ? t + 1e-6 : 0.1;
    }
}
BENCHMARK(BM_Torsion)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

void BM_SelectPermutation(benchmark::State& state) {
    Curve curve = Curve::moment_curve(static_cast<int>(state.range(0)), Interval(0, 1));
    for (auto _ : state)
        benchmark::DoNotOptimize(select_permutation(curve, 0.41));
}
BENCHMARK(BM_SelectPermutation)->Arg(2)->Arg(3)->Arg(4);

void BM_LevelsetCover(benchmark::State& state) {
    Curve curve = cubic_curve();
    LevelSetFn fn = minor_levelset_fn(curve, identity_permutation(2), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            levelset_cover(fn, static_cast<int>(state.range(0)), curve.domain()));
}
BENCHMARK(BM_LevelsetCover)->Arg(2)->Arg(6)->Arg(10);

void BM_InitialDecomposition(benchmark::State& state) {
    Curve curve = cubic_curve();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            initial_decomposition(curve, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_InitialDecomposition)->Arg(3)->Arg(8);

void BM_IteratedIntegral(benchmark::State& state) {
    Curve curve = Curve::moment_curve(3, Interval(0, 1));
    std::vector<double> pts = {0.1, 0.45, 0.9};
    for (auto _ : state)
        benchmark::DoNotOptimize(iterated_integral(curve, 3, pts, 1e-8));
}
BENCHMARK(BM_IteratedIntegral);

void BM_Vandermonde(benchmark::State& state) {
    std::vector<double> pts = {0.1, 0.2, 0.5, 0.7, 0.9, 0.95};
    for (auto _ : state) benchmark::DoNotOptimize(vandermonde(pts));
}
BENCHMARK(BM_Vandermonde);

}  // namespace

BENCHMARK_MAIN();
