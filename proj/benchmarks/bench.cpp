#include <benchmark/benchmark.h>

#include "rtprof/congestion.hpp"
#include "rtprof/poincare.hpp"
#include "rtprof/profiles.hpp"
#include "rtprof/round_tree.hpp"

namespace {

using namespace rtprof;

void BM_BuildRoundTree(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        RoundTreeGraph rt = build_round_tree(2, 2, depth);
        benchmark::DoNotOptimize(rt.graph.num_edges());
    }
}
BENCHMARK(BM_BuildRoundTree)->Arg(4)->Arg(6)->Arg(8);

void BM_BuildYk(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        YkGraph yk = build_yk(2, 2, 1.0, k);
        benchmark::DoNotOptimize(yk.graph.num_edges());
    }
}
BENCHMARK(BM_BuildYk)->Arg(2)->Arg(3)->Arg(4);

void BM_Congestion(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    YkGraph yk = build_yk(2, 2, 1.0, k);
    Coloring col = build_coloring(yk);
    for (auto _ : state) {
        EdgeLoads loads = compute_congestion(yk, col);
        benchmark::DoNotOptimize(loads.total_edge_visits);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(yk.graph.num_vertices()) *
                            static_cast<std::int64_t>(yk.graph.num_vertices()));
}
BENCHMARK(BM_Congestion)->Arg(2)->Arg(3)->Arg(4);

void BM_LemmaBoundP15(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    YkGraph yk = build_yk(2, 2, 1.5, k);
    Coloring col = build_coloring(yk);
    EdgeLoads loads = compute_congestion(yk, col);
    for (auto _ : state) {
        auto cert = lemma_bound(yk, col, loads, 1.5);
        benchmark::DoNotOptimize(cert.bound);
    }
}
BENCHMARK(BM_LemmaBoundP15)->Arg(2)->Arg(3)->Arg(4);

void BM_Fiedler(benchmark::State& state) {
    RoundTreeGraph ball = build_half_plane(2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SpectralPair pair = fiedler_pair(ball.graph);
        benchmark::DoNotOptimize(pair.lambda2);
    }
}
BENCHMARK(BM_Fiedler)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_CutHeuristic(benchmark::State& state) {
    RoundTreeGraph ball = build_half_plane(2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        CutResult cut = cut_heuristic(ball.graph);
        benchmark::DoNotOptimize(cut.size);
    }
}
BENCHMARK(BM_CutHeuristic)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_H2Dense(benchmark::State& state) {
    Graph g = complete_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        PoincareResult result = h2_exact(g);
        benchmark::DoNotOptimize(result.value);
    }
}
BENCHMARK(BM_H2Dense)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
