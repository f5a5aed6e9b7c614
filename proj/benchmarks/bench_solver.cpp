#include <benchmark/benchmark.h>

#include "sarx/counterfactual/counterfactual.hpp"
#include "sarx/features/feature_expectation.hpp"
#include "sarx/service/case_study.hpp"
#include "sarx/solver/solver.hpp"

using namespace sarx;

static void BM_SolveCase(benchmark::State& state) {
    const auto s = service::case_study_scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solver::solve(s));
}
BENCHMARK(BM_SolveCase)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ClosedLoopFeatures(benchmark::State& state) {
    const auto s = service::case_study_scenario(static_cast<int>(state.range(0)));
    const auto policy = solver::solve(s);
    sar::SarModel m(s);
    const auto b0 = m.initial_belief();
    for (auto _ : state) benchmark::DoNotOptimize(features::feature_expectation_closed(policy, b0, m));
}
BENCHMARK(BM_ClosedLoopFeatures)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_OpenLoopFeatures(benchmark::State& state) {
    const auto s = service::case_study_scenario(1);
    const auto actions = counterfactual::path_to_actions(service::case_study_user_path(1), s);
    sar::SarModel m(s);
    const auto b0 = m.initial_belief();
    for (auto _ : state) benchmark::DoNotOptimize(features::feature_expectation_open(actions, b0, m));
}
BENCHMARK(BM_OpenLoopFeatures);

static void BM_MonteCarlo(benchmark::State& state) {
    const auto s = service::case_study_scenario(1);
    const auto policy = solver::solve(s);
    sar::SarModel m(s);
    const auto b0 = m.initial_belief();
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(features::feature_expectation_mc(policy, b0, m, state.range(0), seed++));
}
BENCHMARK(BM_MonteCarlo)->Arg(10'000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
