// Microbenchmarks for the cluster labelers: grid geometric hashing vs the
// adjacency baselines, over dataset-size and grid-size ladders.

#include "svclust/evaluation.hpp"
#include "svclust/kernels.hpp"
#include "svclust/labeling.hpp"
#include "svclust/projection.hpp"
#include "svclust/svdd.hpp"
#include "svclust/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace svclust;

struct Fixture {
    DataMatrix data;
    SvcModel model;
    Projection2D proj;
};

// One fitted model per dataset size, shared across labeler benchmarks.
const Fixture& fixture_for(int n) {
    static std::map<int, Fixture> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    TwoBlobParams params;
    params.n_per_blob = n / 2;
    Fixture f;
    f.data = make_two_blobs(42, params);
    KernelOptions opt;
    opt.q = 2.0;
    KernelMatrix kernel = build_kernel_matrix(f.data, KernelKind::Gaussian, opt);
    f.model = solve_dual(make_ball_problem(kernel, 0.05), OptimMethod::Quadratic, 42);
    f.proj = project(f.data, 1, 2);
    return cache.emplace(n, std::move(f)).first->second;
}

void BM_GridLabeling(benchmark::State& state) {
    const Fixture& f = fixture_for(static_cast<int>(state.range(0)));
    const int g = static_cast<int>(state.range(1));
    long long ops = 0;
    for (auto _ : state) {
        auto [gl, ca] = label_grid(f.model, f.proj, g, 1);
        ops = ca.op_count;
        benchmark::DoNotOptimize(ca.class_points.data());
    }
    state.counters["kernel_ops"] = static_cast<double>(ops);
}

void BM_KnnAdjacencyLabeling(benchmark::State& state) {
    const Fixture& f = fixture_for(static_cast<int>(state.range(0)));
    long long ops = 0;
    for (auto _ : state) {
        ClusterAssignment ca = label_knn_adjacency(f.model, f.proj, 4, 20);
        ops = ca.op_count;
        benchmark::DoNotOptimize(ca.class_points.data());
    }
    state.counters["kernel_ops"] = static_cast<double>(ops);
}

void BM_MstAdjacencyLabeling(benchmark::State& state) {
    const Fixture& f = fixture_for(static_cast<int>(state.range(0)));
    long long ops = 0;
    for (auto _ : state) {
        ClusterAssignment ca = label_mst_adjacency(f.model, f.proj, 4, 20);
        ops = ca.op_count;
        benchmark::DoNotOptimize(ca.class_points.data());
    }
    state.counters["kernel_ops"] = static_cast<double>(ops);
}

void BM_SolveDualQuadratic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    TwoBlobParams params;
    params.n_per_blob = n / 2;
    DataMatrix data = make_two_blobs(42, params);
    KernelOptions opt;
    opt.q = 2.0;
    KernelMatrix kernel = build_kernel_matrix(data, KernelKind::Gaussian, opt);
    BallProblem problem = make_ball_problem(kernel, 0.05);
    for (auto _ : state) {
        SvcModel m = solve_dual(problem, OptimMethod::Quadratic, 42);
        benchmark::DoNotOptimize(m.r_hat_sq);
    }
}

BENCHMARK(BM_GridLabeling)
    ->Args({150, 13})
    ->Args({150, 26})
    ->Args({300, 13})
    ->Args({600, 13})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnnAdjacencyLabeling)->Arg(150)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MstAdjacencyLabeling)->Arg(150)->Arg(300)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveDualQuadratic)->Arg(75)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
