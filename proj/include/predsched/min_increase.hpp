#pragma once

#include <span>
#include <vector>

#include "predsched/simulator.hpp"

namespace predsched {

struct MinIncreaseChoice {
  int machine = 0;
  double cost = 0.0;           // Q of the chosen machine
  std::vector<double> costs;   // Q_ij for every machine i
};

// Marginal objective increase Q_ij of placing `job` on each machine, given
// the unfinished jobs already assigned per machine (`machine_jobs`, which
// must not contain `job`) and their remaining processing requirements at
// the job's release. Jobs already on a machine with density at least the
// new job's run before it. Ties in Q go to the lowest machine index.
MinIncreaseChoice min_increase_assign(const Instance& instance, int job, std::span<const std::vector<int>> machine_jobs,
                                      std::span<const double> remaining);

// Clairvoyant greedy: each released job goes to the machine of least Q;
// every machine then runs preemptive WSPT by true densities, ties in favour
// of the job assigned first.
class ClairvoyantMinIncreasePolicy final : public RatePolicy {
 public:
  void reset(const Instance& instance) override;
  RateDecision decide(const PolicyState& state) override;
  std::string name() const override { return "clairvoyant-minincrease"; }

  const std::vector<int>& machine_of() const { return machine_of_; }
  const std::vector<double>& costs() const { return cost_; }
  // Per-machine WSPT orders of the jobs assigned so far.
  PermutationPrediction induced_prediction(const Instance& instance) const;

 private:
  bool outranks(const Instance& instance, int a, int b) const;

  std::vector<int> machine_of_;
  std::vector<double> cost_;
  std::vector<long> sequence_;
  long next_sequence_ = 0;
};

struct MinIncreaseResult {
  Schedule schedule;
  PermutationPrediction assignment;  // per-machine WSPT orders
  std::vector<int> machine_of;
  std::vector<double> cost;          // Q_{g(j) j}
};

MinIncreaseResult clairvoyant_minincrease(const Instance& instance, const SimulationOptions& options = {});

}  // namespace predsched
