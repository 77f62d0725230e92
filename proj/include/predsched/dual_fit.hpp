#pragma once

#include <array>
#include <optional>
#include <vector>

#include "predsched/model.hpp"

namespace predsched {

struct DualSolution {
  double s = 0.0;
  int machines = 0;
  int slots = 0;           // b is zero from this slot on
  std::vector<double> a;   // a_hat per job
  std::vector<double> b;   // b_hat, machine-major: b[i * slots + t]

  double b_at(int machine, long t) const {
    return t < slots ? b[static_cast<std::size_t>(machine) * static_cast<std::size_t>(slots) + static_cast<std::size_t>(t)]
                     : 0.0;
  }
};

struct DualFitReport {
  bool feasible = false;
  bool identity_holds = false;
  double max_violation = 0.0;   // largest lhs - rhs over all checked constraints
  double identity_error = 0.0;  // relative gap of sum a_hat - sum b_hat vs (1 - 1/s) ALG
  double algorithm_objective = 0.0;
  std::size_t constraints_checked = 0;
  std::optional<std::array<int, 3>> violation;  // (machine, job, slot), 0-based
  DualSolution solution;
};

// Runs clairvoyant MinIncrease and checks the scaled dual solution built
// from its assignment costs. Every p_ij and r_j must be an integer
// multiple of s.
DualFitReport dual_fit_verify(const Instance& instance, double s);

}  // namespace predsched
