#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "predsched/model.hpp"

namespace predsched {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

// What a policy sees at a decision point: the clock, the released and
// unfinished jobs (ascending index), and the shared remaining-processing
// vector p_j(t). Non-clairvoyant policies must not read `remaining`.
struct PolicyState {
  double time = 0.0;
  const Instance* instance = nullptr;
  std::span<const int> alive;
  std::span<const double> remaining;
};

struct RateDecision {
  std::vector<RateEntry> rates;
  // Next time the policy wants to be queried again, independent of
  // releases and completions.
  double next_epoch = kNever;
};

class RatePolicy {
 public:
  virtual ~RatePolicy() = default;
  // Called once before a simulation run starts.
  virtual void reset(const Instance& /*instance*/) {}
  virtual RateDecision decide(const PolicyState& state) = 0;
  virtual std::string name() const = 0;
};

struct SimulationOptions {
  bool record_segments = true;
  // Extra query times, used to refine the event grid.
  std::vector<double> extra_epochs;
  // Invoked at every decision point, after releases and completions at that
  // time have been applied and before the policy is queried.
  std::function<void(const PolicyState&)> observer;
  // 0 selects a limit proportional to the job count.
  std::size_t max_events = 0;
};

// Event-driven rate simulation. Rates are re-queried at every release,
// completion and policy epoch; between events they are constant.
Schedule simulate(const Instance& instance, RatePolicy& policy, const SimulationOptions& options = {});

// Completion threshold relative to a job's processing requirement.
inline constexpr double kCompletionSlack = 1e-9;

// Splits per-job aggregate rates (each at most 1, total at most m) over m
// identical machines by wrap-around filling.
std::vector<RateEntry> wrap_around(std::span<const int> jobs, std::span<const double> rates, int machines);

}  // namespace predsched
