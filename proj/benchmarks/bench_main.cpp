// Micro-benchmarks for the hot paths: skeleton generation, type
// enumeration, chain construction, realization and the raw sweep.

#include <benchmark/benchmark.h>

#include "bigramsey/classes.hpp"
#include "bigramsey/flim.hpp"
#include "bigramsey/oracle.hpp"
#include "bigramsey/tmax.hpp"
#include "bigramsey/types.hpp"

namespace {

using namespace bigramsey;

RelStruct og_path3() {
    RelStruct h;
    h.size = 3;
    h.rels = {{{0, 1}, {1, 0}, {1, 2}, {2, 1}}};
    return h;
}

void BM_Skeletons(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(skeletons(m));
}
BENCHMARK(BM_Skeletons)->Arg(3)->Arg(5)->Arg(7);

void BM_EnumerateTypes(benchmark::State& state) {
    ClassSpec c = make_og();
    RelStruct h = og_path3();
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_types(h, c));
}
BENCHMARK(BM_EnumerateTypes);

void BM_BuildChain(benchmark::State& state) {
    ClassSpec c = make_og();
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_chain(c, depth, {}));
}
BENCHMARK(BM_BuildChain)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Realize(benchmark::State& state) {
    ClassSpec c = make_og();
    RelStruct h = og_path3();
    LimitChain chain = build_chain(c, 6, {});
    Skeleton skel = parse_skeleton("(0: l0 (1: l1 l2))");
    RealizationProblem p{skel, h, c, 6};
    for (auto _ : state) benchmark::DoNotOptimize(realize(chain, p));
}
BENCHMARK(BM_Realize);

void BM_RawSweep(benchmark::State& state) {
    ClassSpec c = make_og();
    RelStruct h = og_path3();
    LimitChain chain = build_chain(c, 6, {});
    for (auto _ : state) benchmark::DoNotOptimize(raw_copies_of(chain, h, 6));
}
BENCHMARK(BM_RawSweep)->Unit(benchmark::kMillisecond);

void BM_LevelNodes(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(level_nodes(n));
}
BENCHMARK(BM_LevelNodes)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
