#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "predsched/model.hpp"

namespace predsched {

// Floor for non-positive predicted lengths.
inline constexpr double kLengthFloor = 1e-9;

struct SampleSet {
  std::vector<Instance> samples;
  std::size_t size() const { return samples.size(); }
};

// WSPT order of the predicted lengths, with non-positive entries raised to
// the floor first.
PermutationPrediction length_to_permutation(std::span<const double> weights, const LengthPrediction& y);

enum class NoiseMode { fixed, scaled };

// y_j = max(p_j + N(0, std_j^2), floor) with std_j = level (fixed) or
// level * sqrt(p_j) (scaled).
LengthPrediction perturb_lengths(std::span<const double> p, NoiseMode mode, double level, std::mt19937_64& rng);
LengthPrediction perturb_lengths(std::span<const double> p, NoiseMode mode, double level, std::uint64_t seed);

// Instance with the job-wise mean weights and processing requirements.
Instance average_instance(const SampleSet& samples);

// WSPT of the average instance on single and identical machines; clairvoyant
// MinIncrease assignment of the average instance on unrelated machines.
PermutationPrediction erm_learn(const SampleSet& samples);

// Mean eta_s over the samples, or mean eta_r (against each sample's
// reference prediction) for assigned predictions.
double empirical_error(const PermutationPrediction& prediction, const SampleSet& samples);

}  // namespace predsched
