#include "sphfano/catalog.hpp"
#include "sphfano/enumeration.hpp"
#include "sphfano/geometry.hpp"
#include "sphfano/registry.hpp"

#include <benchmark/benchmark.h>

using namespace sphfano;

static void BM_HullAndDual(benchmark::State& state) {
    std::vector<VecQ> pts;
    for (long x = -3; x <= 3; ++x)
        for (long y = -3; y <= 3; ++y)
            if (x * x + y * y <= 10) pts.push_back({Rat(x), Rat(y)});
    for (auto _ : state) {
        auto p = geometry::convex_hull(pts, 2);
        benchmark::DoNotOptimize(geometry::dual(p));
    }
}
BENCHMARK(BM_HullAndDual);

static void BM_EnumerateToric(benchmark::State& state) {
    auto d = registry::build("toric", {{"n", 2}});
    enumeration::EnumConfig cfg;
    cfg.box_bound = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumeration::enumerate(d, cfg));
}
BENCHMARK(BM_EnumerateToric)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_EnumerateHorospherical(benchmark::State& state) {
    auto d = registry::build("SL2xGm.horo", {{"a1", 1}});
    for (auto _ : state) benchmark::DoNotOptimize(enumeration::enumerate(d));
}
BENCHMARK(BM_EnumerateHorospherical)->Unit(benchmark::kMillisecond);

static void BM_CatalogDim3(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(catalog::build_catalog({1, 2, 3}, {0, 1, 2}));
}
BENCHMARK(BM_CatalogDim3)->Unit(benchmark::kMillisecond);

static void BM_CatalogFull(benchmark::State& state) {
    auto jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(catalog::build_catalog({1, 2, 3, 4}, {0, 1, 2}, {}, jobs));
}
BENCHMARK(BM_CatalogFull)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
