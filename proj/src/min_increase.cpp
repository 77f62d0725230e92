#include "predsched/min_increase.hpp"

#include <algorithm>
#include <numeric>

namespace predsched {

MinIncreaseChoice min_increase_assign(const Instance& instance, int job, std::span<const std::vector<int>> machine_jobs,
                                      std::span<const double> remaining) {
  const int m = instance.machines();
  if (machine_jobs.size() != static_cast<std::size_t>(m)) throw Error("machine state does not match machine count");
  const Job& self = instance.jobs[static_cast<std::size_t>(job)];
  MinIncreaseChoice choice;
  choice.costs.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double p_ij = instance.processing_time(i, job);
    const double density = self.weight / p_ij;
    double ahead = 0.0;        // remaining time of jobs that stay in front
    double behind_weight = 0.0;  // weight of jobs pushed back by p_ij
    for (int other : machine_jobs[static_cast<std::size_t>(i)]) {
      if (other == job) throw Error("machine state already contains the job being assigned");
      const Job& o = instance.jobs[static_cast<std::size_t>(other)];
      if (o.weight / instance.processing_time(i, other) >= density) {
        ahead += instance.env.rate(i, other) * remaining[static_cast<std::size_t>(other)];
      } else {
        behind_weight += o.weight;
      }
    }
    choice.costs[static_cast<std::size_t>(i)] = self.weight * (self.release + p_ij + ahead) + p_ij * behind_weight;
  }
  const auto best = std::min_element(choice.costs.begin(), choice.costs.end());
  choice.machine = static_cast<int>(best - choice.costs.begin());
  choice.cost = *best;
  return choice;
}

void ClairvoyantMinIncreasePolicy::reset(const Instance& instance) {
  machine_of_.assign(instance.size(), -1);
  cost_.assign(instance.size(), 0.0);
  sequence_.assign(instance.size(), -1);
  next_sequence_ = 0;
}

bool ClairvoyantMinIncreasePolicy::outranks(const Instance& instance, int a, int b) const {
  const int i = machine_of_[static_cast<std::size_t>(a)];
  const double da = instance.jobs[static_cast<std::size_t>(a)].weight / instance.processing_time(i, a);
  const double db = instance.jobs[static_cast<std::size_t>(b)].weight / instance.processing_time(i, b);
  if (da != db) return da > db;
  return sequence_[static_cast<std::size_t>(a)] < sequence_[static_cast<std::size_t>(b)];
}

RateDecision ClairvoyantMinIncreasePolicy::decide(const PolicyState& state) {
  const Instance& instance = *state.instance;
  const int m = instance.machines();

  std::vector<int> fresh;
  for (int j : state.alive) {
    if (machine_of_[static_cast<std::size_t>(j)] == -1) fresh.push_back(j);
  }
  if (!fresh.empty()) {
    // Simultaneous arrivals are placed in order of release, then index.
    std::stable_sort(fresh.begin(), fresh.end(), [&](int a, int b) {
      return instance.jobs[static_cast<std::size_t>(a)].release < instance.jobs[static_cast<std::size_t>(b)].release;
    });
    std::vector<std::vector<int>> machine_jobs(static_cast<std::size_t>(m));
    for (int j : state.alive) {
      const int i = machine_of_[static_cast<std::size_t>(j)];
      if (i != -1) machine_jobs[static_cast<std::size_t>(i)].push_back(j);
    }
    for (int j : fresh) {
      const MinIncreaseChoice choice = min_increase_assign(instance, j, machine_jobs, state.remaining);
      machine_of_[static_cast<std::size_t>(j)] = choice.machine;
      cost_[static_cast<std::size_t>(j)] = choice.cost;
      sequence_[static_cast<std::size_t>(j)] = next_sequence_++;
      machine_jobs[static_cast<std::size_t>(choice.machine)].push_back(j);
    }
  }

  std::vector<int> top(static_cast<std::size_t>(m), -1);
  for (int j : state.alive) {
    int& best = top[static_cast<std::size_t>(machine_of_[static_cast<std::size_t>(j)])];
    if (best == -1 || outranks(instance, j, best)) best = j;
  }
  RateDecision out;
  for (int i = 0; i < m; ++i) {
    if (top[static_cast<std::size_t>(i)] != -1) out.rates.push_back(RateEntry{i, top[static_cast<std::size_t>(i)], 1.0});
  }
  return out;
}

PermutationPrediction ClairvoyantMinIncreasePolicy::induced_prediction(const Instance& instance) const {
  std::vector<std::vector<int>> orders(static_cast<std::size_t>(instance.machines()));
  for (std::size_t j = 0; j < machine_of_.size(); ++j) {
    if (machine_of_[j] == -1) throw Error("job " + std::to_string(j + 1) + " was never assigned");
    orders[static_cast<std::size_t>(machine_of_[j])].push_back(static_cast<int>(j));
  }
  for (auto& order : orders) {
    std::sort(order.begin(), order.end(), [&](int a, int b) { return outranks(instance, a, b); });
  }
  return PermutationPrediction::assigned(std::move(orders), instance.size());
}

MinIncreaseResult clairvoyant_minincrease(const Instance& instance, const SimulationOptions& options) {
  ClairvoyantMinIncreasePolicy policy;
  MinIncreaseResult result;
  result.schedule = simulate(instance, policy, options);
  result.assignment = policy.induced_prediction(instance);
  result.machine_of = policy.machine_of();
  result.cost = policy.costs();
  return result;
}

}  // namespace predsched
