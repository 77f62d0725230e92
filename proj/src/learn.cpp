#include "predsched/learn.hpp"

#include <algorithm>
#include <cmath>

#include "predsched/errors.hpp"
#include "predsched/min_increase.hpp"

namespace predsched {

PermutationPrediction length_to_permutation(std::span<const double> weights, const LengthPrediction& y) {
  std::vector<double> clamped(y.y.begin(), y.y.end());
  for (double& v : clamped) v = std::max(v, kLengthFloor);
  return PermutationPrediction::single_order(wspt_order(weights, clamped));
}

LengthPrediction perturb_lengths(std::span<const double> p, NoiseMode mode, double level, std::mt19937_64& rng) {
  if (!(level >= 0.0)) throw Error("noise level must be non-negative");
  LengthPrediction out;
  out.y.resize(p.size());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double sd = mode == NoiseMode::fixed ? level : level * std::sqrt(p[j]);
    // Draw even at zero noise so streams stay aligned across levels.
    const double z = normal(rng);
    out.y[j] = sd == 0.0 ? p[j] : std::max(p[j] + sd * z, kLengthFloor);
  }
  return out;
}

LengthPrediction perturb_lengths(std::span<const double> p, NoiseMode mode, double level, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return perturb_lengths(p, mode, level, rng);
}

Instance average_instance(const SampleSet& samples) {
  if (samples.size() == 0) throw Error("empty sample set");
  const Instance& first = samples.samples.front();
  const std::size_t n = first.size();
  Instance avg = first;
  std::vector<double> rates(first.env.rates().size(), 0.0);
  for (Job& job : avg.jobs) {
    job.weight = 0.0;
    job.processing = 0.0;
    job.release = 0.0;
  }
  for (const Instance& sample : samples.samples) {
    if (sample.size() != n || sample.env.kind() != first.env.kind() || sample.machines() != first.machines()) {
      throw Error("samples differ in job count or environment");
    }
    for (std::size_t j = 0; j < n; ++j) {
      avg.jobs[j].weight += sample.jobs[j].weight;
      avg.jobs[j].processing += sample.jobs[j].processing;
      avg.jobs[j].release += sample.jobs[j].release;
    }
    for (std::size_t k = 0; k < rates.size(); ++k) rates[k] += sample.env.rates()[k];
  }
  const double z = static_cast<double>(samples.size());
  for (Job& job : avg.jobs) {
    job.weight /= z;
    job.processing /= z;
    job.release /= z;
  }
  if (first.env.kind() == EnvKind::unrelated) {
    for (double& r : rates) r /= z;
    avg.env = MachineEnvironment::unrelated(first.machines(), std::move(rates));
  }
  return avg;
}

PermutationPrediction erm_learn(const SampleSet& samples) {
  const Instance avg = average_instance(samples);
  if (avg.env.kind() == EnvKind::unrelated) {
    SimulationOptions options;
    options.record_segments = false;
    return clairvoyant_minincrease(avg, options).assignment;
  }
  return PermutationPrediction::single_order(wspt_order(avg.weights(), avg.lengths()));
}

double empirical_error(const PermutationPrediction& prediction, const SampleSet& samples) {
  if (samples.size() == 0) throw Error("empty sample set");
  double total = 0.0;
  for (const Instance& sample : samples.samples) {
    total += prediction.is_single() ? eta_s_value(sample, prediction, Execution::serial)
                                    : *eta_r(sample, prediction, reference_prediction(sample)).eta_r;
  }
  return total / static_cast<double>(samples.size());
}

}  // namespace predsched
