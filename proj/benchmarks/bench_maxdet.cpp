#include <benchmark/benchmark.h>

#include <array>

#include "maxdet/exact.hpp"
#include "maxdet/excess_search.hpp"
#include "maxdet/hadamard_gen.hpp"
#include "maxdet/normalize.hpp"

namespace {

using namespace maxdet;

void BM_NormalizedExcess(benchmark::State& state) {
    SignMatrix h = [&] {
        switch (state.range(0)) {
            case 36: return paley2(17);
            case 96: return kronecker(sylvester(1), paley1(47));
            default: return sylvester(4);
        }
    }();
    std::array<int, 3> subset = {0, 1, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalized_excess(h, subset));
    }
}
BENCHMARK(BM_NormalizedExcess)->Arg(16)->Arg(36)->Arg(96);

void BM_MaxExcessSearch(benchmark::State& state) {
    SignMatrix h = paley2(17);
    SearchOptions opt;
    opt.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_excess(h, opt).best_excess);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(subset_count(36)));
}
BENCHMARK(BM_MaxExcessSearch)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_ThreeNormalize(benchmark::State& state) {
    SignMatrix h = kronecker(sylvester(1), paley1(47));  // order 96
    for (auto _ : state) {
        benchmark::DoNotOptimize(three_normalize(h, {1, 5, 9}).excess);
    }
}
BENCHMARK(BM_ThreeNormalize);

void BM_ExactDeterminant(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    SignMatrix h = sylvester(n == 16 ? 4 : 5);
    IntMatrix m = IntMatrix::from_sign(h);
    for (auto _ : state) {
        benchmark::DoNotOptimize(det_exact(m));
    }
}
BENCHMARK(BM_ExactDeterminant)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
