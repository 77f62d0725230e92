#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "predsched/model.hpp"

namespace predsched {

enum class Distribution { pareto, exponential, weibull };

const char* to_string(Distribution d);
Distribution distribution_from_string(const std::string& name);

// Pareto(shape, scale) by inverse transform; support [scale, inf).
double sample_pareto(std::mt19937_64& rng, double shape, double scale);
// Processing requirement from the named family: Pareto(1.1, 1),
// exponential with mean 1, or Weibull with scale 2 and shape 0.5.
double sample_length(std::mt19937_64& rng, Distribution d);

struct GeneratorConfig {
  Distribution distribution = Distribution::pareto;
  int n = 1000;
  int m = 1;
  EnvKind env = EnvKind::single;
  // Pareto(2, 1) weights and releases. By default on for identical and
  // unrelated machines, off for a single machine.
  bool weighted = false;
  bool releases = false;
  // Unrelated machines: l_ij uniform in [rate_low, rate_high].
  double rate_low = 1.0;
  double rate_high = 4.0;

  static GeneratorConfig defaults_for(EnvKind env, Distribution d, int n, int m);
};

Instance generate_instance(const GeneratorConfig& config, std::uint64_t seed);
Instance generate_instance(const GeneratorConfig& config, std::mt19937_64& rng);

}  // namespace predsched
