#include "predsched/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "predsched/errors.hpp"
#include "predsched/learn.hpp"
#include "predsched/schedules.hpp"

namespace predsched {

namespace {

SimulationOptions quiet() {
  SimulationOptions options;
  options.record_segments = false;
  return options;
}

struct Predictions {
  PermutationPrediction order;
  std::optional<PermutationPrediction> assignment;
  double eta_s = 0.0;
  double ell1 = 0.0;
};

// Order from predicted lengths, plus the MinIncrease assignment of the
// predicted instance when a policy needs one.
Predictions predict_from_lengths(const Instance& instance, const LengthPrediction& y, bool want_assignment) {
  Predictions out;
  out.order = length_to_permutation(instance.weights(), y);
  if (want_assignment) {
    std::vector<double> clamped(y.y);
    for (double& v : clamped) v = std::max(v, kLengthFloor);
    out.assignment = clairvoyant_minincrease(instance.with_lengths(clamped), quiet()).assignment;
  }
  out.eta_s = eta_s_value(instance, out.order, Execution::serial);
  out.ell1 = ell1(instance.lengths(), y.y);
  return out;
}

bool needs_assignment(const std::vector<PolicySpec>& specs) {
  const auto uses = [](const PolicySpec& s, const auto& self) -> bool {
    if (s.is_pts()) return self(s.parts[0], self) || self(s.parts[1], self);
    return s.kind == "minincrease";
  };
  return std::any_of(specs.begin(), specs.end(), [&](const PolicySpec& s) { return uses(s, uses); });
}

double evaluate(const PolicySpec& spec, const Instance& instance, const Predictions& predictions) {
  PredictionInputs inputs;
  inputs.order = &predictions.order;
  inputs.assignment = predictions.assignment ? &*predictions.assignment : nullptr;
  auto policy = make_policy(spec, instance, inputs);
  return objective(simulate(instance, *policy, quiet()), instance.jobs);
}

ExperimentRecord base_record(const ExperimentConfig& config, const PolicySpec& spec, double x, int run,
                             std::uint64_t seed) {
  ExperimentRecord r;
  r.experiment = to_string(config.experiment);
  r.distribution = to_string(config.distribution);
  r.n = config.n;
  r.m = config.m;
  r.algorithm = spec.family();
  if (spec.is_pts()) r.lambda = spec.lambda;
  r.x = x;
  r.run = run;
  r.seed = seed;
  return r;
}

void fill(ExperimentRecord& r, const PolicySpec& spec, const Instance& instance, const Predictions& predictions,
          double baseline) {
  r.baseline = baseline;
  r.eta_s = predictions.eta_s;
  r.ell1 = predictions.ell1;
  try {
    r.objective = evaluate(spec, instance, predictions);
    r.ratio = r.objective / baseline;
  } catch (const std::exception& e) {
    r.objective = r.ratio = std::nan("");
    r.error = e.what();
  }
}

// Runs cell(c) for c in [0, count) and concatenates the per-cell outputs in
// cell order, so both paths produce the same sequence.
template <typename Cell>
std::vector<ExperimentRecord> run_cells(std::size_t count, Execution execution, Cell cell) {
  std::vector<std::vector<ExperimentRecord>> slots(count);
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(count); ++c) {
      slots[static_cast<std::size_t>(c)] = cell(static_cast<std::size_t>(c));
    }
  } else {
    for (std::size_t c = 0; c < count; ++c) slots[c] = cell(c);
  }
  std::vector<ExperimentRecord> out;
  for (auto& slot : slots) {
    for (auto& r : slot) out.push_back(std::move(r));
  }
  return out;
}

constexpr std::uint64_t kInstanceStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kInitialStream = 3;

}  // namespace

const char* to_string(ExperimentKind kind) { return kind == ExperimentKind::online ? "online" : "sensitivity"; }

ExperimentKind experiment_from_string(const std::string& name) {
  if (name == "sensitivity") return ExperimentKind::sensitivity;
  if (name == "online") return ExperimentKind::online;
  throw Error("unknown experiment '" + name + "'");
}

std::vector<double> default_omegas() { return {0, 0.1, 0.5, 1, 2, 5, 10, 20, 35, 50}; }

GeneratorConfig ExperimentConfig::generator() const {
  return GeneratorConfig::defaults_for(env, distribution, n, m);
}

std::vector<PolicySpec> ExperimentConfig::policies() const {
  std::vector<std::string> names = algorithms;
  if (names.empty()) {
    switch (env) {
      case EnvKind::single: names = {"rr", "pts(wspt,rr)"}; break;
      case EnvKind::identical: names = {"wdeq", "pts(pwspt,wdeq)"}; break;
      case EnvKind::unrelated: names = {"pf", "pts(minincrease,pf)"}; break;
    }
  }
  return expand_policies(names, lambdas);
}

void ExperimentConfig::validate() const {
  if (n < 1) throw Error("n must be at least 1");
  if (m < 1) throw Error("m must be at least 1");
  if (env == EnvKind::single && m != 1) throw Error("a single-machine environment needs m = 1");
  if (runs < 1) throw Error("runs must be at least 1");
  if (experiment == ExperimentKind::online && rounds < 1) throw Error("rounds must be at least 1");
  if (experiment == ExperimentKind::sensitivity && omegas.empty()) throw Error("the omega grid is empty");
  for (double w : omegas) {
    if (!(w >= 0.0)) throw Error("omega values must be non-negative");
  }
  if (!(gamma >= 0.0)) throw Error("gamma must be non-negative");
  for (double l : lambdas) {
    if (!(l > 0.0 && l < 1.0)) throw Error("lambda values must lie in (0, 1)");
  }
  policies();
}

double baseline_objective(const Instance& instance) {
  switch (instance.env.kind()) {
    case EnvKind::single:
      if (!instance.has_releases()) return smith_objective(instance.weights(), instance.lengths());
      [[fallthrough]];
    case EnvKind::identical: {
      const auto order = PermutationPrediction::single_order(wspt_order(instance.weights(), instance.lengths()));
      return objective(priority_schedule(instance, order, quiet()), instance.jobs);
    }
    case EnvKind::unrelated: return objective(clairvoyant_minincrease(instance, quiet()).schedule, instance.jobs);
  }
  throw Error("unknown environment");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  const auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  h = mix(h ^ a);
  h = mix(h ^ b);
  return mix(h ^ c);
}

std::vector<ExperimentRecord> run_sensitivity(const ExperimentConfig& config, Execution execution) {
  config.validate();
  const auto specs = config.policies();
  const bool want_assignment = needs_assignment(specs);
  const GeneratorConfig gen = config.generator();
  const std::size_t grid = config.omegas.size();
  const auto runs = static_cast<std::size_t>(config.runs);

  // Instances and prediction-free results are shared by every omega of a
  // run, so they are computed once per run.
  struct RunData {
    Instance instance;
    double baseline = 0.0;
    std::vector<std::optional<ExperimentRecord>> oblivious;
  };
  std::vector<RunData> per_run(runs);
  const auto prepare = [&](std::size_t run) {
    RunData& d = per_run[run];
    d.instance = generate_instance(gen, derive_seed(config.seed, kInstanceStream, run));
    d.baseline = baseline_objective(d.instance);
    d.oblivious.resize(specs.size());
    const Predictions none{PermutationPrediction{}, std::nullopt, 0.0, 0.0};
    for (std::size_t a = 0; a < specs.size(); ++a) {
      if (specs[a].uses_prediction()) continue;
      ExperimentRecord r;
      fill(r, specs[a], d.instance, none, d.baseline);
      d.oblivious[a] = std::move(r);
    }
  };
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t run = 0; run < static_cast<std::ptrdiff_t>(runs); ++run) prepare(static_cast<std::size_t>(run));
  } else {
    for (std::size_t run = 0; run < runs; ++run) prepare(run);
  }

  auto records = run_cells(runs * grid, execution, [&](std::size_t cell) {
    const std::size_t run = cell / grid;
    const std::size_t k = cell % grid;
    const RunData& d = per_run[run];
    const double omega = config.omegas[k];
    const std::uint64_t seed = derive_seed(config.seed, kNoiseStream, run, k);
    const auto y = perturb_lengths(d.instance.lengths(), NoiseMode::fixed, omega, seed);
    const Predictions predictions = predict_from_lengths(d.instance, y, want_assignment);
    std::vector<ExperimentRecord> out;
    for (std::size_t a = 0; a < specs.size(); ++a) {
      ExperimentRecord r = base_record(config, specs[a], omega, static_cast<int>(run), seed);
      if (d.oblivious[a]) {
        r.objective = d.oblivious[a]->objective;
        r.baseline = d.baseline;
        r.ratio = d.oblivious[a]->ratio;
        r.error = d.oblivious[a]->error;
        r.eta_s = predictions.eta_s;
        r.ell1 = predictions.ell1;
      } else {
        fill(r, specs[a], d.instance, predictions, d.baseline);
      }
      out.push_back(std::move(r));
    }
    return out;
  });
  sort_records(records);
  return records;
}

OnlineResult run_online_learning(const ExperimentConfig& config, Execution execution) {
  config.validate();
  const auto specs = config.policies();
  const bool want_assignment = needs_assignment(specs) || config.env == EnvKind::unrelated;
  const GeneratorConfig gen = config.generator();
  const auto reps = static_cast<std::size_t>(config.runs);
  const auto rounds = static_cast<std::size_t>(config.rounds);

  OnlineResult result;
  result.learning_error.assign(reps, std::vector<double>(rounds, 0.0));
  // Rounds depend on earlier rounds through the learner, so a repetition is
  // one cell.
  result.records = run_cells(reps, execution, [&](std::size_t rep) {
    std::vector<ExperimentRecord> out;
    const Instance base = generate_instance(gen, derive_seed(config.seed, kInstanceStream, rep));
    const Instance initial = generate_instance(gen, derive_seed(config.seed, kInitialStream, rep));
    const auto base_p = base.lengths();

    SampleSet history;
    for (std::size_t t = 0; t < rounds; ++t) {
      const std::uint64_t seed = derive_seed(config.seed, kNoiseStream, rep, t);
      const auto noisy = perturb_lengths(base_p, NoiseMode::scaled, config.gamma, seed);
      const Instance round = base.with_lengths(noisy.y);

      Predictions predictions;
      std::vector<double> predicted_lengths;
      if (t == 0) {
        predicted_lengths = initial.lengths();
        predictions.order = PermutationPrediction::single_order(wspt_order(base.weights(), predicted_lengths));
        if (want_assignment) {
          predictions.assignment =
              clairvoyant_minincrease(round.with_lengths(predicted_lengths), quiet()).assignment;
        }
      } else {
        const Instance avg = average_instance(history);
        predicted_lengths = avg.lengths();
        if (config.env == EnvKind::unrelated) {
          predictions.assignment = erm_learn(history);
          predictions.order = PermutationPrediction::single_order(wspt_order(avg.weights(), predicted_lengths));
        } else {
          predictions.order = erm_learn(history);
          if (want_assignment) predictions.assignment = clairvoyant_minincrease(avg, quiet()).assignment;
        }
      }
      predictions.eta_s = eta_s_value(round, predictions.order, Execution::serial);
      predictions.ell1 = ell1(round.lengths(), predicted_lengths);
      result.learning_error[rep][t] =
          config.env == EnvKind::unrelated
              ? *eta_r(base, *predictions.assignment, reference_prediction(base)).eta_r
              : eta_s_value(base, predictions.order, Execution::serial);

      const double baseline = baseline_objective(round);
      for (const PolicySpec& spec : specs) {
        ExperimentRecord r = base_record(config, spec, static_cast<double>(t), static_cast<int>(rep), seed);
        fill(r, spec, round, predictions, baseline);
        out.push_back(std::move(r));
      }
      history.samples.push_back(round);
    }
    return out;
  });
  sort_records(result.records);
  return result;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config, Execution execution) {
  return config.experiment == ExperimentKind::online ? run_online_learning(config, execution).records
                                                     : run_sensitivity(config, execution);
}

void sort_records(std::vector<ExperimentRecord>& records) {
  const auto key = [](const ExperimentRecord& r) {
    return std::make_tuple(std::cref(r.algorithm), r.lambda.value_or(-1.0), r.x, r.run);
  };
  std::stable_sort(records.begin(), records.end(),
                   [&](const ExperimentRecord& a, const ExperimentRecord& b) { return key(a) < key(b); });
}

std::vector<CellSummary> summarize(const std::vector<ExperimentRecord>& records) {
  std::map<std::tuple<std::string, double, double>, std::vector<double>> cells;
  for (const auto& r : records) {
    if (!r.error.empty() || std::isnan(r.ratio)) continue;
    cells[{r.algorithm, r.lambda.value_or(-1.0), r.x}].push_back(r.ratio);
  }
  std::vector<CellSummary> out;
  for (auto& [key, ratios] : cells) {
    CellSummary s;
    s.algorithm = std::get<0>(key);
    if (std::get<1>(key) >= 0.0) s.lambda = std::get<1>(key);
    s.x = std::get<2>(key);
    s.count = ratios.size();
    double sum = 0.0;
    for (double v : ratios) sum += v;
    s.mean_ratio = sum / static_cast<double>(s.count);
    if (s.count > 1) {
      double sq = 0.0;
      for (double v : ratios) sq += (v - s.mean_ratio) * (v - s.mean_ratio);
      const double sd = std::sqrt(sq / static_cast<double>(s.count - 1));
      s.ci_half_width = 1.96 * sd / std::sqrt(static_cast<double>(s.count));
    }
    std::sort(ratios.begin(), ratios.end());
    const std::size_t h = s.count / 2;
    s.median_ratio = s.count % 2 ? ratios[h] : 0.5 * (ratios[h - 1] + ratios[h]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace predsched
