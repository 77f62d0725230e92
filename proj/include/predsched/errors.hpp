#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "predsched/kernels.hpp"
#include "predsched/model.hpp"

namespace predsched {

struct ErrorReport {
  std::optional<double> eta_s;
  std::optional<double> eta_r;
  // eta_s: inversion sum charged to the later job of each pair in the true
  // order. eta_r: W_j(prediction) - W_j(reference).
  std::vector<double> per_job;
  // Inverted pairs (j', j): j' precedes j in the true WSPT order but follows
  // it in the prediction. Filled only on request.
  std::vector<std::pair<int, int>> inversions;
  std::optional<double> ell1;
  std::optional<double> nu;
};

// Weighted inversion error of a single predicted order against the WSPT
// order of the true weights and processing requirements.
ErrorReport eta_s(const Instance& instance, const PermutationPrediction& prediction, bool list_inversions = false,
                  Execution execution = Execution::parallel);
double eta_s_value(const Instance& instance, const PermutationPrediction& prediction,
                   Execution execution = Execution::parallel);

// W_j for every job: the objective increase from inserting j into the
// prediction's priority schedule at r_j. Needs a machine for every job, so
// the prediction must be assigned or the environment a single machine.
std::vector<double> w_contributions(const Instance& instance, const PermutationPrediction& prediction);
double w_contribution(const Instance& instance, const PermutationPrediction& prediction, int job);

ErrorReport eta_r(const Instance& instance, const PermutationPrediction& prediction,
                  const PermutationPrediction& reference);

// True WSPT order on single and identical machines, clairvoyant MinIncrease
// assignment on unrelated machines.
PermutationPrediction reference_prediction(const Instance& instance);

double ell1(std::span<const double> p, std::span<const double> y);
// OPT(max(p, y)) - OPT(min(p, y)) for unit weights on one machine.
double nu(std::span<const double> p, std::span<const double> y);
// Same, rejecting weighted, multi-machine or released instances.
double nu(const Instance& instance, std::span<const double> y);

}  // namespace predsched
