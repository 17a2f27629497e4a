#include "fixtures.hpp"

#include "gridx/mps.hpp"
#include "gridx/planner.hpp"

#include <benchmark/benchmark.h>

#include <sstream>

using namespace gridx;

namespace {

void BM_BuildErcotScale(benchmark::State& state) {
    const auto problem = testing::ercot_scale_problem();
    const BuildOptions options{state.range(0) != 0, state.range(0) != 0};
    std::size_t cols = 0;
    for (auto _ : state) {
        auto model = build_model(problem, options);
        cols = model.lp.num_columns();
        benchmark::DoNotOptimize(cols);
    }
    state.counters["columns"] = static_cast<double>(cols);
}
BENCHMARK(BM_BuildErcotScale)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_WriteMpsErcotScale(benchmark::State& state) {
    const auto model = build_model(testing::ercot_scale_problem(), {true, false});
    for (auto _ : state) {
        std::ostringstream out;
        write_mps(model.lp, out);
        benchmark::DoNotOptimize(out.tellp());
    }
}
BENCHMARK(BM_WriteMpsErcotScale)->Unit(benchmark::kMillisecond)->Iterations(2);

} // namespace

BENCHMARK_MAIN();
