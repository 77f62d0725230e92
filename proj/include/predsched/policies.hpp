#pragma once

#include <memory>
#include <vector>

#include "predsched/simulator.hpp"

namespace predsched {

// Weighted round robin on one machine: rate_j = w_j / sum of alive weights.
// The result is aligned with state.alive.
std::vector<double> wrr_rates(const PolicyState& state);

// Weighted dynamic equipartition on m identical machines: weight-proportional
// shares of m, water-filled so that no job exceeds rate 1.
std::vector<double> wdeq_rates(const PolicyState& state, int machines);
std::vector<double> water_fill(std::span<const double> weights, double capacity);

// Proportional fairness. On single and identical machines this is the
// water-filling allocation; on unrelated machines the Eisenberg-Gale program
// is solved numerically.
std::vector<RateEntry> pf_rates(const PolicyState& state);

// Round robin family on single or identical machines. With unit weights this
// is plain round robin (equipartition), otherwise WRR / WDEQ.
class EquipartitionPolicy final : public RatePolicy {
 public:
  explicit EquipartitionPolicy(bool weighted) : weighted_(weighted) {}
  RateDecision decide(const PolicyState& state) override;
  std::string name() const override { return weighted_ ? "wdeq" : "rr"; }

 private:
  bool weighted_;
};

class ProportionalFairnessPolicy final : public RatePolicy {
 public:
  RateDecision decide(const PolicyState& state) override;
  std::string name() const override { return "pf"; }
};

// Runs the highest-priority available jobs of a permutation prediction at
// rate 1. A single order runs its top-m available jobs on single or
// identical machines; an assigned prediction runs, on each machine, the
// highest-priority available job assigned to it.
class PriorityPolicy final : public RatePolicy {
 public:
  explicit PriorityPolicy(PermutationPrediction prediction, std::string label = "priority")
      : prediction_(std::move(prediction)), label_(std::move(label)) {}
  void reset(const Instance& instance) override;
  RateDecision decide(const PolicyState& state) override;
  std::string name() const override { return label_; }
  const PermutationPrediction& prediction() const { return prediction_; }

 private:
  PermutationPrediction prediction_;
  std::string label_;
  std::vector<int> scratch_;
};

}  // namespace predsched
