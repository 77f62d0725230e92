#include "predsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace predsched {

const char* to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::single:
      return "single";
    case EnvKind::identical:
      return "identical";
    case EnvKind::unrelated:
      return "unrelated";
  }
  return "?";
}

EnvKind env_kind_from_string(const std::string& name) {
  if (name == "single") return EnvKind::single;
  if (name == "identical") return EnvKind::identical;
  if (name == "unrelated") return EnvKind::unrelated;
  throw Error("unknown machine environment '" + name + "'");
}

MachineEnvironment MachineEnvironment::single() { return MachineEnvironment{}; }

MachineEnvironment MachineEnvironment::identical(int machines) {
  if (machines < 1) throw Error("identical environment needs at least one machine");
  MachineEnvironment env;
  env.kind_ = EnvKind::identical;
  env.machines_ = machines;
  return env;
}

MachineEnvironment MachineEnvironment::unrelated(int machines, std::vector<double> rates) {
  if (machines < 1) throw Error("unrelated environment needs at least one machine");
  if (rates.size() % static_cast<std::size_t>(machines) != 0) {
    throw Error("rate matrix size is not a multiple of the machine count");
  }
  MachineEnvironment env;
  env.kind_ = EnvKind::unrelated;
  env.machines_ = machines;
  env.columns_ = rates.size() / static_cast<std::size_t>(machines);
  env.rates_ = std::move(rates);
  return env;
}

std::size_t MachineEnvironment::rate_columns() const { return columns_; }

bool Instance::has_releases() const {
  return std::any_of(jobs.begin(), jobs.end(), [](const Job& j) { return j.release != 0.0; });
}

std::vector<double> Instance::weights() const {
  std::vector<double> w(jobs.size());
  std::transform(jobs.begin(), jobs.end(), w.begin(), [](const Job& j) { return j.weight; });
  return w;
}

std::vector<double> Instance::lengths() const {
  std::vector<double> p(jobs.size());
  std::transform(jobs.begin(), jobs.end(), p.begin(), [](const Job& j) { return j.processing; });
  return p;
}

Instance Instance::with_lengths(std::span<const double> lengths) const {
  if (lengths.size() != jobs.size()) throw Error("length vector does not match job count");
  Instance copy = *this;
  for (std::size_t j = 0; j < jobs.size(); ++j) copy.jobs[j].processing = lengths[j];
  return copy;
}

std::vector<Job> make_jobs(std::span<const double> weights, std::span<const double> lengths,
                           std::span<const double> releases) {
  if (weights.size() != lengths.size() || (!releases.empty() && releases.size() != lengths.size())) {
    throw Error("job attribute vectors differ in length");
  }
  std::vector<Job> jobs(lengths.size());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    jobs[j] = Job{static_cast<int>(j) + 1, weights[j], lengths[j], releases.empty() ? 0.0 : releases[j]};
  }
  return jobs;
}

Validation validate_instance(const Instance& instance) {
  auto fail = [](std::string why) { return Validation{false, std::move(why)}; };
  if (instance.jobs.empty()) return fail("instance has no jobs");
  std::vector<bool> seen(instance.jobs.size(), false);
  for (std::size_t k = 0; k < instance.jobs.size(); ++k) {
    const Job& job = instance.jobs[k];
    if (job.id < 1 || static_cast<std::size_t>(job.id) > instance.jobs.size()) {
      return fail("job id " + std::to_string(job.id) + " outside 1.." + std::to_string(instance.jobs.size()));
    }
    if (seen[static_cast<std::size_t>(job.id - 1)]) return fail("duplicate job id " + std::to_string(job.id));
    seen[static_cast<std::size_t>(job.id - 1)] = true;
    if (job.id != static_cast<int>(k) + 1) {
      return fail("job ids not contiguous: position " + std::to_string(k + 1) + " holds id " +
                  std::to_string(job.id));
    }
    if (!(job.weight > 0.0) || !std::isfinite(job.weight)) {
      return fail("job " + std::to_string(job.id) + " has non-positive weight");
    }
    if (!(job.processing > 0.0) || !std::isfinite(job.processing)) {
      return fail("job " + std::to_string(job.id) + " has non-positive processing");
    }
    if (!(job.release >= 0.0) || !std::isfinite(job.release)) {
      return fail("job " + std::to_string(job.id) + " has negative release");
    }
  }
  const MachineEnvironment& env = instance.env;
  if (env.machines() < 1) return fail("environment has no machines");
  if (env.kind() == EnvKind::single && env.machines() != 1) return fail("single environment with several machines");
  if (env.kind() == EnvKind::unrelated) {
    if (env.rate_columns() != instance.jobs.size()) {
      return fail("rate matrix has " + std::to_string(env.rate_columns()) + " columns for " +
                  std::to_string(instance.jobs.size()) + " jobs");
    }
    for (double r : env.rates()) {
      if (!(r > 0.0) || !std::isfinite(r)) return fail("rate matrix holds a non-positive or non-finite rate");
    }
  }
  return {};
}

void require_valid(const Instance& instance) {
  if (auto v = validate_instance(instance); !v) throw Error("invalid instance: " + v.reason);
}

namespace {

void check_permutation(const std::vector<int>& order, std::size_t n, std::vector<int>& machine_of, int machine) {
  for (int j : order) {
    if (j < 0 || static_cast<std::size_t>(j) >= n) throw Error("prediction references unknown job " + std::to_string(j + 1));
    if (machine_of[static_cast<std::size_t>(j)] != -1) {
      throw Error("prediction lists job " + std::to_string(j + 1) + " twice");
    }
    machine_of[static_cast<std::size_t>(j)] = machine;
  }
}

}  // namespace

PermutationPrediction PermutationPrediction::single_order(std::vector<int> order) {
  PermutationPrediction p;
  p.single_ = true;
  p.machine_of_.assign(order.size(), -1);
  check_permutation(order, order.size(), p.machine_of_, 0);
  p.rank_.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) p.rank_[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  p.orders_.push_back(std::move(order));
  return p;
}

PermutationPrediction PermutationPrediction::assigned(std::vector<std::vector<int>> machine_orders, std::size_t jobs) {
  if (machine_orders.empty()) throw Error("assigned prediction needs at least one machine");
  PermutationPrediction p;
  p.single_ = false;
  p.machine_of_.assign(jobs, -1);
  p.rank_.assign(jobs, -1);
  for (std::size_t i = 0; i < machine_orders.size(); ++i) {
    check_permutation(machine_orders[i], jobs, p.machine_of_, static_cast<int>(i));
    for (std::size_t k = 0; k < machine_orders[i].size(); ++k) {
      p.rank_[static_cast<std::size_t>(machine_orders[i][k])] = static_cast<int>(k);
    }
  }
  for (std::size_t j = 0; j < jobs; ++j) {
    if (p.machine_of_[j] == -1) throw Error("job " + std::to_string(j + 1) + " is not assigned to any machine");
  }
  p.orders_ = std::move(machine_orders);
  return p;
}

const std::vector<int>& PermutationPrediction::order() const {
  if (!single_) throw Error("prediction carries a machine assignment, not a single order");
  return orders_.front();
}

std::vector<int> wspt_order(std::span<const double> weights, std::span<const double> lengths) {
  if (weights.size() != lengths.size()) throw Error("weights and lengths differ in size");
  for (double p : lengths) {
    if (!(p > 0.0)) throw Error("WSPT order needs strictly positive lengths");
  }
  std::vector<double> density(lengths.size());
  for (std::size_t j = 0; j < lengths.size(); ++j) density[j] = weights[j] / lengths[j];
  std::vector<int> order(lengths.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return density[static_cast<std::size_t>(a)] > density[static_cast<std::size_t>(b)];
  });
  return order;
}

double objective(std::span<const double> completions, std::span<const Job> jobs) {
  if (completions.size() != jobs.size()) throw Error("schedule does not cover every job");
  double total = 0.0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (!std::isfinite(completions[j])) throw Error("job " + std::to_string(j + 1) + " has no completion time");
    total += jobs[j].weight * completions[j];
  }
  return total;
}

double objective(const Schedule& schedule, std::span<const Job> jobs) {
  return objective(std::span<const double>(schedule.completions), jobs);
}

double sequence_objective(std::span<const int> order, std::span<const double> weights,
                          std::span<const double> lengths) {
  double time = 0.0;
  double total = 0.0;
  for (int j : order) {
    time += lengths[static_cast<std::size_t>(j)];
    total += weights[static_cast<std::size_t>(j)] * time;
  }
  return total;
}

double smith_objective(std::span<const double> weights, std::span<const double> lengths) {
  const auto order = wspt_order(weights, lengths);
  return sequence_objective(order, weights, lengths);
}

}  // namespace predsched
