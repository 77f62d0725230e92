#include <benchmark/benchmark.h>

#include <random>

#include "predsched/errors.hpp"
#include "predsched/experiments.hpp"
#include "predsched/learn.hpp"

using namespace predsched;

namespace {

struct Fixture {
  Instance instance;
  PermutationPrediction prediction;
};

Fixture make_fixture(int n) {
  GeneratorConfig gen = GeneratorConfig::defaults_for(EnvKind::single, Distribution::pareto, n, 1);
  gen.weighted = true;
  Fixture f;
  f.instance = generate_instance(gen, 7);
  f.prediction = length_to_permutation(f.instance.weights(),
                                       perturb_lengths(f.instance.lengths(), NoiseMode::fixed, 5.0, std::uint64_t{9}));
  return f;
}

void eta_s_kernel(benchmark::State& state, Execution execution) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eta_s_value(f.instance, f.prediction, execution));
  state.SetComplexityN(state.range(0));
}

void experiment_cells(benchmark::State& state, Execution execution) {
  ExperimentConfig config;
  config.n = static_cast<int>(state.range(0));
  config.runs = 4;
  config.omegas = {0, 1, 5, 20};
  config.lambdas = {0.1};
  for (auto _ : state) benchmark::DoNotOptimize(run_sensitivity(config, execution));
}

}  // namespace

BENCHMARK_CAPTURE(eta_s_kernel, serial, Execution::serial)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK_CAPTURE(eta_s_kernel, parallel, Execution::parallel)->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK_CAPTURE(experiment_cells, serial, Execution::serial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(experiment_cells, parallel, Execution::parallel)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
