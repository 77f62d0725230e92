#include "predsched/dual_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "predsched/instance_io.hpp"
#include "predsched/min_increase.hpp"

namespace predsched {

namespace {

bool is_multiple(double value, double s) {
  const double q = value / s;
  return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, q);
}

}  // namespace

DualFitReport dual_fit_verify(const Instance& instance, double s) {
  if (!(s > 1.0)) throw Error("dual fitting needs s > 1");
  require_valid(instance);
  const int m = instance.machines();
  const std::size_t n = instance.size();
  for (std::size_t j = 0; j < n; ++j) {
    const int jj = static_cast<int>(j);
    if (!is_multiple(instance.jobs[j].release, s)) {
      throw Error("release of job " + std::to_string(j + 1) + " is not a multiple of s");
    }
    for (int i = 0; i < m; ++i) {
      if (!is_multiple(instance.processing_time(i, jj), s)) {
        throw Error("p_" + std::to_string(i + 1) + "," + std::to_string(j + 1) + " = " +
                    format_double(instance.processing_time(i, jj)) + " is not a multiple of s");
      }
    }
  }

  SimulationOptions options;
  options.record_segments = false;
  const MinIncreaseResult run = clairvoyant_minincrease(instance, options);

  DualFitReport report;
  report.algorithm_objective = objective(run.schedule, instance.jobs);
  const double c_max = *std::max_element(run.schedule.completions.begin(), run.schedule.completions.end());
  const double tol = 1e-9 * std::max(1.0, c_max);

  DualSolution& dual = report.solution;
  dual.s = s;
  dual.machines = m;
  dual.slots = static_cast<int>(std::ceil((c_max - tol) / s));
  dual.a = run.cost;
  dual.b.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(dual.slots), 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const int i = run.machine_of[j];
    const double c = run.schedule.completions[j];
    for (int t = 0; t < dual.slots && s * t < c - tol; ++t) {
      dual.b[static_cast<std::size_t>(i) * static_cast<std::size_t>(dual.slots) + static_cast<std::size_t>(t)] +=
          instance.jobs[j].weight;
    }
  }

  const double sum_a = std::accumulate(dual.a.begin(), dual.a.end(), 0.0);
  const double sum_b = std::accumulate(dual.b.begin(), dual.b.end(), 0.0);
  const double expected = (1.0 - 1.0 / s) * report.algorithm_objective;
  report.identity_error = std::abs(sum_a - sum_b - expected) / std::max(1.0, std::abs(expected));
  report.identity_holds = report.identity_error <= 1e-6;

  // Past the last slot b vanishes and the right-hand side only grows with t,
  // so checking up to max(slots, ceil(r_j)) covers every constraint.
  report.max_violation = -std::numeric_limits<double>::infinity();
  const double scale = s + 1.0;
  for (int i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int jj = static_cast<int>(j);
      const double p_ij = instance.processing_time(i, jj);
      const double w = instance.jobs[j].weight;
      const double lhs = dual.a[j] / scale / p_ij;
      const long first = static_cast<long>(std::ceil(instance.jobs[j].release - 1e-9));
      const long last = std::max<long>(dual.slots, first);
      for (long t = first; t <= last; ++t) {
        const double rhs = dual.b_at(i, t) / scale + w * ((static_cast<double>(t) + 0.5) / p_ij + 0.5);
        const double gap = lhs - rhs;
        ++report.constraints_checked;
        if (gap > report.max_violation) report.max_violation = gap;
        if (gap > 1e-9 * std::max(1.0, std::abs(rhs)) && !report.violation) {
          report.violation = std::array<int, 3>{i, jj, static_cast<int>(t)};
        }
      }
    }
  }
  report.feasible = !report.violation.has_value();
  return report;
}

}  // namespace predsched
