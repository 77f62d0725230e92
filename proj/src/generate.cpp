#include "predsched/generate.hpp"

#include <cmath>

namespace predsched {

const char* to_string(Distribution d) {
  switch (d) {
    case Distribution::pareto: return "pareto";
    case Distribution::exponential: return "exponential";
    case Distribution::weibull: return "weibull";
  }
  return "?";
}

Distribution distribution_from_string(const std::string& name) {
  if (name == "pareto") return Distribution::pareto;
  if (name == "exponential") return Distribution::exponential;
  if (name == "weibull") return Distribution::weibull;
  throw Error("unknown distribution '" + name + "' (expected pareto, exponential or weibull)");
}

double sample_pareto(std::mt19937_64& rng, double shape, double scale) {
  const double u = 1.0 - std::generate_canonical<double, 64>(rng);  // (0, 1]
  return scale / std::pow(u, 1.0 / shape);
}

double sample_length(std::mt19937_64& rng, Distribution d) {
  switch (d) {
    case Distribution::pareto: return sample_pareto(rng, 1.1, 1.0);
    case Distribution::exponential: {
      double x = 0.0;
      while (!(x > 0.0)) x = std::exponential_distribution<double>(1.0)(rng);
      return x;
    }
    case Distribution::weibull: {
      double x = 0.0;
      while (!(x > 0.0)) x = std::weibull_distribution<double>(0.5, 2.0)(rng);
      return x;
    }
  }
  throw Error("unknown distribution");
}

GeneratorConfig GeneratorConfig::defaults_for(EnvKind env, Distribution d, int n, int m) {
  GeneratorConfig c;
  c.distribution = d;
  c.n = n;
  c.env = env;
  c.m = env == EnvKind::single ? 1 : m;
  c.weighted = env != EnvKind::single;
  c.releases = env != EnvKind::single;
  return c;
}

Instance generate_instance(const GeneratorConfig& config, std::mt19937_64& rng) {
  if (config.n < 1) throw Error("n must be at least 1");
  if (config.m < 1) throw Error("m must be at least 1");
  if (config.env == EnvKind::single && config.m != 1) throw Error("a single-machine environment has m = 1");
  const auto n = static_cast<std::size_t>(config.n);
  std::vector<double> w(n, 1.0), p(n), r(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    p[j] = sample_length(rng, config.distribution);
    if (config.weighted) w[j] = sample_pareto(rng, 2.0, 1.0);
    if (config.releases) r[j] = sample_pareto(rng, 2.0, 1.0);
  }
  Instance instance;
  instance.jobs = make_jobs(w, p, r);
  switch (config.env) {
    case EnvKind::single: instance.env = MachineEnvironment::single(); break;
    case EnvKind::identical: instance.env = MachineEnvironment::identical(config.m); break;
    case EnvKind::unrelated: {
      std::uniform_real_distribution<double> rate(config.rate_low, config.rate_high);
      std::vector<double> rates(static_cast<std::size_t>(config.m) * n);
      for (double& v : rates) v = rate(rng);
      instance.env = MachineEnvironment::unrelated(config.m, std::move(rates));
      break;
    }
  }
  require_valid(instance);
  return instance;
}

Instance generate_instance(const GeneratorConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return generate_instance(config, rng);
}

}  // namespace predsched
