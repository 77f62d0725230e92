#include "predsched/schedules.hpp"

namespace predsched {

Schedule priority_schedule(const Instance& instance, const PermutationPrediction& prediction,
                           const SimulationOptions& options) {
  PriorityPolicy policy(prediction);
  return simulate(instance, policy, options);
}

Schedule pc_wspt_single(const Instance& instance, const PermutationPrediction& order) {
  if (instance.machines() != 1) throw Error("wspt: needs a single machine");
  if (!order.is_single()) throw Error("wspt: needs a single predicted order");
  if (instance.has_releases()) throw Error("wspt: release dates must all be zero");
  PriorityPolicy policy(order, "wspt");
  return simulate(instance, policy);
}

Schedule pc_pwspt_identical(const Instance& instance, const PermutationPrediction& order) {
  if (instance.env.kind() == EnvKind::unrelated) throw Error("pwspt: needs single or identical machines");
  if (!order.is_single()) throw Error("pwspt: needs a single predicted order");
  PriorityPolicy policy(order, "pwspt");
  return simulate(instance, policy);
}

Schedule pc_minincrease_unrelated(const Instance& instance, const PermutationPrediction& assignment) {
  if (assignment.is_single() && instance.machines() > 1) throw Error("minincrease: needs a machine assignment");
  PriorityPolicy policy(assignment, "minincrease");
  return simulate(instance, policy);
}

}  // namespace predsched
