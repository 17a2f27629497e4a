#include "gridx/solver.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace gridx;

namespace {

// Balanced n x n transportation problem with random unit costs.
LpModel transport(int n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> cost(1.0, 10.0);
    LpModel lp("transport");
    for (int i = 0; i < n * n; ++i) lp.add_column("", 0.0, kInfinity, cost(rng));
    for (int s = 0; s < n; ++s) {
        const auto r = lp.add_row("", RowSense::Equal, 10.0);
        for (int d = 0; d < n; ++d) lp.add_coefficient(r, s * n + d, 1.0);
    }
    for (int d = 0; d < n; ++d) {
        const auto r = lp.add_row("", RowSense::Equal, 10.0);
        for (int s = 0; s < n; ++s) lp.add_coefficient(r, s * n + d, 1.0);
    }
    lp.finalize();
    return lp;
}

void BM_SimplexTransport(benchmark::State& state) {
    const auto lp = transport(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto sol = solve_simplex(lp);
        benchmark::DoNotOptimize(sol.objective);
    }
    state.counters["columns"] = static_cast<double>(lp.num_columns());
}
BENCHMARK(BM_SimplexTransport)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
