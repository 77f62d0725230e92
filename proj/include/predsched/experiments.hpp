#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "predsched/generate.hpp"
#include "predsched/kernels.hpp"
#include "predsched/policy_factory.hpp"

namespace predsched {

enum class ExperimentKind { sensitivity, online };

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

std::vector<double> default_omegas();

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::sensitivity;
  Distribution distribution = Distribution::pareto;
  int n = 1000;
  int m = 1;
  EnvKind env = EnvKind::single;
  // Empty selects the environment default: rr or wdeq or pf, plus
  // pts(<prediction policy>,<that policy>) for every lambda.
  std::vector<std::string> algorithms;
  std::vector<double> lambdas{0.1, 0.5, 0.9};
  std::vector<double> omegas = default_omegas();
  double gamma = 10.0;
  int rounds = 10;
  int runs = 10;
  std::uint64_t seed = 1;
  std::string out;

  GeneratorConfig generator() const;
  std::vector<PolicySpec> policies() const;
  // Throws Error describing the first invalid field.
  void validate() const;
};

struct ExperimentRecord {
  std::string experiment;
  std::string distribution;
  int n = 0;
  int m = 0;
  std::string algorithm;          // without lambda
  std::optional<double> lambda;   // pts rows only
  double x = 0.0;                 // omega or round
  int run = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double baseline = 0.0;
  double ratio = 0.0;
  double eta_s = 0.0;
  double ell1 = 0.0;
  std::string error;              // set when the cell failed; objective is NaN then
};

// Exact optimum for a single machine without releases (Smith's rule),
// clairvoyant P-WSPT otherwise on single and identical machines, clairvoyant
// MinIncrease on unrelated machines.
double baseline_objective(const Instance& instance);

// Stream seed for a cell; splitmix64 over the master seed and coordinates.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

std::vector<ExperimentRecord> run_sensitivity(const ExperimentConfig& config,
                                              Execution execution = Execution::parallel);

struct OnlineResult {
  std::vector<ExperimentRecord> records;
  // learning_error[rep][round]: eta_s (or eta_r) of the round's prediction
  // on the repetition's base instance.
  std::vector<std::vector<double>> learning_error;
};

OnlineResult run_online_learning(const ExperimentConfig& config, Execution execution = Execution::parallel);

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config,
                                             Execution execution = Execution::parallel);

// Orders records by algorithm, lambda, x and run.
void sort_records(std::vector<ExperimentRecord>& records);

struct CellSummary {
  std::string algorithm;
  std::optional<double> lambda;
  double x = 0.0;
  std::size_t count = 0;
  double mean_ratio = 0.0;
  double ci_half_width = 0.0;  // 1.96 standard errors
  double median_ratio = 0.0;
};

// Aggregates ratios across runs per (algorithm, lambda, x); failed cells
// are skipped.
std::vector<CellSummary> summarize(const std::vector<ExperimentRecord>& records);

}  // namespace predsched
