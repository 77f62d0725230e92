#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "predsched/model.hpp"

namespace predsched {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t trials = 0;
  std::size_t failures = 0;
  // Largest observed (lhs - rhs) / scale; non-positive when every trial held.
  double worst = -1e300;
  // Reproduction data for the failing trial of smallest n.
  std::uint64_t failing_seed = 0;
  int failing_n = 0;
  std::string detail;
};

// Random instance helpers shared by the suites and the tests.
struct RandomInstanceSpec {
  EnvKind env = EnvKind::single;
  int n = 10;
  int m = 1;
  bool weighted = true;
  bool releases = false;
  bool pareto = false;          // Pareto(1.1, 1) lengths; uniform (0.1, 10) otherwise
  bool integral = false;        // integer weights 1..10 and lengths 1..20
};
Instance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng);
PermutationPrediction random_order(std::size_t n, std::mt19937_64& rng);
PermutationPrediction random_assignment(std::size_t n, int machines, std::mt19937_64& rng);

CheckResult check_wspt_identity(std::size_t trials, int max_n, std::uint64_t seed);
CheckResult check_pts_bound(std::size_t trials, int max_n, std::span<const double> lambdas, std::uint64_t seed);
CheckResult check_pwspt_bound(std::size_t trials, int max_n, std::uint64_t seed);
CheckResult check_eta_r_equals_eta_s(std::size_t trials, int max_n, std::uint64_t seed);
CheckResult check_eta_s_ell1_bound(std::size_t trials, int max_n, std::uint64_t seed);
CheckResult check_decomposition(std::size_t trials, int max_n, std::uint64_t seed);
CheckResult check_dual_fitting(std::size_t trials, std::uint64_t seed);
CheckResult check_rr_two_competitive(std::size_t trials, int max_n, std::uint64_t seed);
// policy: rr, wrr, wdeq, pf, wspt, pwspt, minincrease or pts.
CheckResult check_monotonicity(const std::string& policy, std::size_t trials, std::uint64_t seed);

inline const std::vector<std::string>& monotone_policies() {
  static const std::vector<std::string> names{"rr", "wrr", "wdeq", "pf", "wspt", "pwspt", "minincrease", "pts"};
  return names;
}

// suite: lemmas, dual, props or all.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed = 1);

std::string describe(const CheckResult& result);

}  // namespace predsched
