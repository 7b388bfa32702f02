#include <benchmark/benchmark.h>

#include "fefbound/decomposition.hpp"
#include "fefbound/fef.hpp"
#include "fefbound/principal_basis.hpp"
#include "fefbound/states.hpp"

using namespace fefbound;

// Builds and verifies a fresh table each iteration, bypassing the cache.
static void BM_PrincipalBasisTable(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        PrincipalBasisTable table(d);
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_PrincipalBasisTable)->DenseRange(2, 8, 2);

static void BM_PrincipalCoefficients(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto rho = random_density_state(d, 1);
    for (auto _ : state) benchmark::DoNotOptimize(principal_coefficients(rho));
}
BENCHMARK(BM_PrincipalCoefficients)->DenseRange(2, 6, 1);

static void BM_BlochCoefficients(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto rho = random_density_state(d, 1);
    for (auto _ : state) benchmark::DoNotOptimize(bloch_coefficients(rho));
}
BENCHMARK(BM_BlochCoefficients)->DenseRange(2, 5, 1);

static void BM_FefLowerEstimate(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto rho = random_density_state(d, 1);
    for (auto _ : state) benchmark::DoNotOptimize(fef_lower_estimate(rho));
}
BENCHMARK(BM_FefLowerEstimate)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

static void BM_BoundAudit(benchmark::State& state) {
    const auto rho = horodecki_state(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(bound_audit(rho));
}
BENCHMARK(BM_BoundAudit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
