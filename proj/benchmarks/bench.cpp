#include <benchmark/benchmark.h>

#include "gramops/gramops.hpp"

namespace {

using namespace gramops;

void BM_SvdSquare(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(11);
    const ComplexMatrix m = random_matrix(n, n, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(svd(m));
}
BENCHMARK(BM_SvdSquare)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_HermEig(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Rng rng(12);
    ComplexMatrix g = random_matrix(n, n, rng);
    const ComplexMatrix h = mat_mul(g, adjoint(g));
    for (auto _ : state)
        benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(BM_HermEig)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_MpInverse(benchmark::State& state) {
    const AlgebraShape shape({2, 3});
    Rng rng(13);
    const AMatrix t = random_amatrix(shape, 4, 3, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(mp_inverse(t, 1e-10));
}
BENCHMARK(BM_MpInverse)->Unit(benchmark::kMicrosecond);

void BM_TikhonovRoute(benchmark::State& state) {
    const AlgebraShape shape({2});
    Rng rng(14);
    const AMatrix t = random_amatrix(shape, 3, 3, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(mp_inverse_tikhonov(t, 1.0, 0.1, 1e-10, 20));
}
BENCHMARK(BM_TikhonovRoute)->Unit(benchmark::kMillisecond);

void BM_VolterraStudy(benchmark::State& state) {
    const std::vector<std::size_t> grids{16, 32, 64};
    for (auto _ : state)
        benchmark::DoNotOptimize(no_solution_study(grids));
}
BENCHMARK(BM_VolterraStudy)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
