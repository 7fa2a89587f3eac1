// Serial reference vs OpenMP kernels on Heisenberg models.

#include "nilform/catalog.hpp"
#include "nilform/kernels.hpp"
#include "nilform/resonance.hpp"
#include "nilform/ring.hpp"

#include <benchmark/benchmark.h>

using namespace nilform;

namespace {

template <bool Parallel>
void differential_matrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto c = catalog::heisenberg(n);
    for (auto _ : state)
        for (int q = 0; q <= 2 * n + 1; ++q) {
            auto m = Parallel ? kernels::differential_matrix_parallel(c, q) : kernels::differential_matrix_serial(c, q);
            benchmark::DoNotOptimize(m);
        }
}

template <bool Parallel>
void products(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto c = catalog::heisenberg(n);
    std::vector<kernels::ProductTask> tasks;
    for (int p = 1; p <= n; ++p)
        for (const auto& a : c.cohomology(p).representatives())
            for (const auto& b : c.cohomology(n + 1 - p).representatives())
                tasks.push_back({&a, &b, &c.cohomology(n + 1)});
    for (auto _ : state) {
        auto out = Parallel ? kernels::evaluate_products_parallel(tasks) : kernels::evaluate_products_serial(tasks);
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void mu_dims(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto r = RingPresentation::from_cdga(catalog::heisenberg(n), n + 1);
    const auto points = sample_points(2 * n, 64, 64, 0);
    for (auto _ : state) {
        auto out = Parallel ? kernels::mu_dims_parallel(r, points, n) : kernels::mu_dims_serial(r, points, n);
        benchmark::DoNotOptimize(out);
    }
}

}  // namespace

BENCHMARK(differential_matrix<false>)->DenseRange(2, 4);
BENCHMARK(differential_matrix<true>)->DenseRange(2, 4);
BENCHMARK(products<false>)->DenseRange(2, 4);
BENCHMARK(products<true>)->DenseRange(2, 4);
BENCHMARK(mu_dims<false>)->DenseRange(2, 3);
BENCHMARK(mu_dims<true>)->DenseRange(2, 3);

BENCHMARK_MAIN();
