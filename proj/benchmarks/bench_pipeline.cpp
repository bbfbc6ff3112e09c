#include <random>
#include <sstream>

#include <benchmark/benchmark.h>

#include "fittsnorm/analysis.hpp"
#include "fittsnorm/log_format.hpp"
#include "fittsnorm/modeling.hpp"
#include "fittsnorm/normality.hpp"
#include "fittsnorm/screening.hpp"
#include "fittsnorm/simulation.hpp"
#include "fittsnorm/synth.hpp"

using namespace fittsnorm;

namespace {

const std::vector<TrialRecord>& population() {
  static const auto recs = generate_population(AgentProfile::calibrated(), 60, ExperimentDesign::standard(), 1);
  return recs;
}

const AnalysisTable& table() {
  static const AnalysisTable t =
      build_analysis(screen(measure_dataset(build_dataset(population())).dataset).dataset);
  return t;
}

void BM_Synthesize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_population(AgentProfile::calibrated(), n, ExperimentDesign::standard(), 7, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * 450);
}
BENCHMARK(BM_Synthesize)->Arg(10)->Arg(60);

void BM_ParseLog(benchmark::State& state) {
  std::ostringstream out;
  write_log(out, population());
  const std::string text = out.str();
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(parse_log(in));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseLog);

void BM_MeasureScreenAnalyze(benchmark::State& state) {
  const Dataset ds = build_dataset(population());
  for (auto _ : state) {
    const auto measured = measure_dataset(ds).dataset;
    benchmark::DoNotOptimize(build_analysis(screen(measured).dataset));
  }
}
BENCHMARK(BM_MeasureScreenAnalyze);

void BM_CompareModels(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compare_models(table(), Scope::mixed));
}
BENCHMARK(BM_CompareModels);

void BM_EvaluateMetrics(benchmark::State& state) {
  const auto subset = sample_participants(table().participant_count(), 20, 3);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_metrics(table(), subset));
}
BENCHMARK(BM_EvaluateMetrics);

void BM_ShapiroWilk(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (double& v : xs) v = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(shapiro_wilk(xs));
}
BENCHMARK(BM_ShapiroWilk)->Arg(25)->Arg(500);

void BM_HenzeZirkler(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Point> pts(static_cast<std::size_t>(state.range(0)));
  for (Point& p : pts) p = {g(rng), g(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(henze_zirkler(pts));
}
BENCHMARK(BM_HenzeZirkler)->Arg(25)->Arg(500);

}  // namespace
BENCHMARK_MAIN();
