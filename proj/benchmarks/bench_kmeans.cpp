#include "gridx/cluster.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace gridx;

namespace {

// 365 days with 24 hours for each of `buses` buses.
FeatureMatrix day_features(std::size_t buses) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    FeatureMatrix x{365, 24 * buses, {}};
    x.data.resize(x.rows * x.dims);
    for (auto& v : x.data) v = n(rng);
    return x;
}

void BM_KMeans(benchmark::State& state) {
    const auto x = day_features(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = kmeans(x, 5, 7, 4);
        benchmark::DoNotOptimize(r.inertia);
    }
}
BENCHMARK(BM_KMeans)->Arg(3)->Arg(123)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
