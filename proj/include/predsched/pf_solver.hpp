#pragma once

#include <span>
#include <vector>

#include "predsched/model.hpp"

namespace predsched {

class SolverError : public Error {
 public:
  using Error::Error;
};

struct PfSolution {
  // Machine-major allocation: x[i * jobs + k] is the rate of job k on machine i.
  std::vector<double> x;
  // Throughput per job, sum_i x_ik / l_ik.
  std::vector<double> throughput;
  // Largest of the final barrier parameter (the complementarity products)
  // and the stationarity error, with weights normalised to sum to one.
  double kkt_residual = 0.0;
  int iterations = 0;
};

struct PfOptions {
  int max_iterations = 10000;
  double kkt_tolerance = 1e-6;
};

// Maximises sum_k w_k log(sum_i x_ik / l_ik) subject to per-machine and
// per-job rate sums at most 1 and x >= 0. `lengths` holds the machine-major
// m x k rate multipliers l_ik. Uses a primal log-barrier path with Newton
// steps; the Newton system is solved blockwise per job plus an m x m
// correction for the machine constraints, so the cost per step is O(k m^3).
// Throws SolverError when the iteration cap is hit before the KKT tolerance.
PfSolution solve_proportional_fairness(std::span<const double> weights, std::span<const double> lengths, int machines,
                                       const PfOptions& options = {});

}  // namespace predsched
