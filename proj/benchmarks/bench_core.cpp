#include "clausedag/clause_matrix.hpp"
#include "clausedag/harness.hpp"
#include "clausedag/render.hpp"
#include "clausedag/solver.hpp"

#include <benchmark/benchmark.h>

using namespace clausedag;

static void BM_GenerateMatrix(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_cm(n));
}
BENCHMARK(BM_GenerateMatrix)->Arg(10)->Arg(26)->Arg(50);

static void BM_Propagate(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const Formula f = gen_random({n, static_cast<std::size_t>(4 * n), GenMode::Uniform, 7});
    for (auto _ : state) {
        ClauseMatrix cm = generate_cm(n);
        subtract(cm, f);
        RemovalConditions rc(n);
        benchmark::DoNotOptimize(garbage_collect(cm, rc));
    }
}
BENCHMARK(BM_Propagate)->Arg(8)->Arg(16)->Arg(26);

static void BM_SolveWorkedExample(benchmark::State& state)
{
    const Formula f = worked_example();
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(f));
}
BENCHMARK(BM_SolveWorkedExample);

static void BM_SolvePlanted(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const Formula f = gen_random({n, static_cast<std::size_t>(3 * n), GenMode::Planted, 11});
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(f));
}
BENCHMARK(BM_SolvePlanted)->Arg(6)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
