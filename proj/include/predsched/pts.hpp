#pragma once

#include <memory>

#include "predsched/simulator.hpp"

namespace predsched {

struct PtsConfig {
  double lambda = 0.5;
  std::unique_ptr<RatePolicy> clairvoyant;  // A, runs in the (1 - lambda) share
  std::unique_ptr<RatePolicy> robust;       // B, runs in the lambda share
};

// Preferential time sharing. Policy A sees job j from real time
// r_j / (1 - lambda) and runs on virtual clock (1 - lambda) t; policy B sees
// it from r_j / lambda on clock lambda t. Both read the shared remaining
// processing, and the combined rate is (1 - lambda) z_A + lambda z_B.
class PreferentialTimeSharing final : public RatePolicy {
 public:
  PreferentialTimeSharing(std::unique_ptr<RatePolicy> clairvoyant, std::unique_ptr<RatePolicy> robust, double lambda);
  explicit PreferentialTimeSharing(PtsConfig config)
      : PreferentialTimeSharing(std::move(config.clairvoyant), std::move(config.robust), config.lambda) {}

  void reset(const Instance& instance) override;
  RateDecision decide(const PolicyState& state) override;
  std::string name() const override;
  double lambda() const { return lambda_; }

 private:
  std::unique_ptr<RatePolicy> a_;
  std::unique_ptr<RatePolicy> b_;
  double lambda_;
  std::vector<int> visible_a_;
  std::vector<int> visible_b_;
};

Schedule pts_combine(const Instance& instance, PtsConfig config, const SimulationOptions& options = {});

}  // namespace predsched
