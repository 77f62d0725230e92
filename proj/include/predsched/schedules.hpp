#pragma once

#include "predsched/min_increase.hpp"
#include "predsched/policies.hpp"
#include "predsched/pts.hpp"

namespace predsched {

// Runs the priority policy of a permutation prediction.
Schedule priority_schedule(const Instance& instance, const PermutationPrediction& prediction,
                           const SimulationOptions& options = {});

// Prediction-clairvoyant WSPT on one machine without release dates.
Schedule pc_wspt_single(const Instance& instance, const PermutationPrediction& order);

// Top-m jobs of a single predicted order on identical machines.
Schedule pc_pwspt_identical(const Instance& instance, const PermutationPrediction& order);

// Per-machine priority schedule of an assigned prediction.
Schedule pc_minincrease_unrelated(const Instance& instance, const PermutationPrediction& assignment);

}  // namespace predsched
