#include "predsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "predsched/min_increase.hpp"
#include "predsched/schedules.hpp"

namespace predsched {

namespace {

void require_covers(const Instance& instance, const PermutationPrediction& prediction) {
  if (prediction.job_count() != instance.size()) {
    throw Error("prediction covers " + std::to_string(prediction.job_count()) + " jobs, instance has " +
                std::to_string(instance.size()));
  }
}

double spt_objective(std::vector<double> lengths) {
  std::sort(lengths.begin(), lengths.end());
  double total = 0.0, clock = 0.0;
  for (double p : lengths) {
    clock += p;
    total += clock;
  }
  return total;
}

}  // namespace

ErrorReport eta_s(const Instance& instance, const PermutationPrediction& prediction, bool list_inversions,
                  Execution execution) {
  require_covers(instance, prediction);
  if (!prediction.is_single()) throw Error("eta_s needs a single predicted order");
  const auto w = instance.weights();
  const auto p = instance.lengths();
  const auto sigma = wspt_order(w, p);
  std::vector<int> rank(instance.size());
  for (std::size_t j = 0; j < rank.size(); ++j) rank[j] = prediction.rank(static_cast<int>(j));

  ErrorReport report;
  report.per_job.assign(instance.size(), 0.0);
  if (execution == Execution::parallel) {
    kernels::inversion_contributions_parallel(sigma, rank, w, p, report.per_job);
  } else {
    kernels::inversion_contributions_serial(sigma, rank, w, p, report.per_job);
  }
  report.eta_s = std::accumulate(report.per_job.begin(), report.per_job.end(), 0.0);
  if (list_inversions) {
    for (std::size_t b = 0; b < sigma.size(); ++b) {
      for (std::size_t a = 0; a < b; ++a) {
        if (rank[static_cast<std::size_t>(sigma[a])] > rank[static_cast<std::size_t>(sigma[b])]) {
          report.inversions.emplace_back(sigma[a], sigma[b]);
        }
      }
    }
  }
  return report;
}

double eta_s_value(const Instance& instance, const PermutationPrediction& prediction, Execution execution) {
  return *eta_s(instance, prediction, false, execution).eta_s;
}

std::vector<double> w_contributions(const Instance& instance, const PermutationPrediction& prediction) {
  require_covers(instance, prediction);
  if (prediction.is_single() && instance.machines() > 1) {
    throw Error("W_j needs a machine per job: use an assigned prediction on " + std::to_string(instance.machines()) +
                " machines");
  }
  if (!prediction.is_single() && prediction.machine_count() != instance.machines()) {
    throw Error("prediction machine count does not match the environment");
  }
  const std::size_t n = instance.size();
  std::vector<int> by_release(n);
  std::iota(by_release.begin(), by_release.end(), 0);
  std::stable_sort(by_release.begin(), by_release.end(), [&](int a, int b) {
    return instance.jobs[static_cast<std::size_t>(a)].release < instance.jobs[static_cast<std::size_t>(b)].release;
  });

  std::vector<double> out(n, kNoCompletion);
  std::size_t next = 0;
  SimulationOptions options;
  options.record_segments = false;
  options.observer = [&](const PolicyState& state) {
    const double t = state.time;
    while (next < n && instance.jobs[static_cast<std::size_t>(by_release[next])].release == t) {
      const int j = by_release[next++];
      const Job& job = instance.jobs[static_cast<std::size_t>(j)];
      const int i = prediction.machine_of(j);
      const double p_ij = instance.processing_time(i, j);
      double ahead = 0.0, behind_weight = 0.0;
      for (int k : state.alive) {
        if (prediction.machine_of(k) != i) continue;
        const Job& other = instance.jobs[static_cast<std::size_t>(k)];
        if (other.release == job.release && k > j) continue;
        if (prediction.rank(k) > prediction.rank(j)) {
          behind_weight += other.weight;
        } else {
          ahead += instance.env.rate(i, k) * state.remaining[static_cast<std::size_t>(k)];
        }
      }
      out[static_cast<std::size_t>(j)] = p_ij * behind_weight + job.weight * (job.release + ahead);
    }
  };
  priority_schedule(instance, prediction, options);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(out[j])) throw Error("no decision point at the release of job " + std::to_string(j + 1));
  }
  return out;
}

double w_contribution(const Instance& instance, const PermutationPrediction& prediction, int job) {
  if (job < 0 || static_cast<std::size_t>(job) >= instance.size()) throw Error("job index out of range");
  return w_contributions(instance, prediction)[static_cast<std::size_t>(job)];
}

ErrorReport eta_r(const Instance& instance, const PermutationPrediction& prediction,
                  const PermutationPrediction& reference) {
  if (prediction.is_single() != reference.is_single() ||
      (!prediction.is_single() && prediction.machine_count() != reference.machine_count())) {
    throw Error("eta_r: prediction and reference use different assignment variants");
  }
  const auto predicted = w_contributions(instance, prediction);
  const auto ideal = w_contributions(instance, reference);
  ErrorReport report;
  report.per_job.resize(instance.size());
  for (std::size_t j = 0; j < predicted.size(); ++j) report.per_job[j] = predicted[j] - ideal[j];
  report.eta_r = std::accumulate(report.per_job.begin(), report.per_job.end(), 0.0);
  return report;
}

PermutationPrediction reference_prediction(const Instance& instance) {
  if (instance.env.kind() == EnvKind::unrelated) {
    SimulationOptions options;
    options.record_segments = false;
    return clairvoyant_minincrease(instance, options).assignment;
  }
  return PermutationPrediction::single_order(wspt_order(instance.weights(), instance.lengths()));
}

double ell1(std::span<const double> p, std::span<const double> y) {
  if (p.size() != y.size()) throw Error("ell1: length vectors differ in size");
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) total += std::abs(p[j] - y[j]);
  return total;
}

double nu(std::span<const double> p, std::span<const double> y) {
  if (p.size() != y.size()) throw Error("nu: length vectors differ in size");
  std::vector<double> hi(p.size()), lo(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    hi[j] = std::max(p[j], y[j]);
    lo[j] = std::min(p[j], y[j]);
  }
  return spt_objective(std::move(hi)) - spt_objective(std::move(lo));
}

double nu(const Instance& instance, std::span<const double> y) {
  if (instance.machines() != 1) throw Error("nu is defined for a single machine only");
  if (instance.has_releases()) throw Error("nu is defined without release dates only");
  for (const Job& job : instance.jobs) {
    if (job.weight != 1.0) throw Error("nu is defined for unit weights only");
  }
  return nu(instance.lengths(), y);
}

}  // namespace predsched
