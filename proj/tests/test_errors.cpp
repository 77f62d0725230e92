#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "predsched/checks.hpp"
#include "predsched/dual_fit.hpp"
#include "predsched/errors.hpp"
#include "predsched/kernels.hpp"
#include "predsched/learn.hpp"
#include "predsched/schedules.hpp"

using namespace predsched;
using doctest::Approx;

TEST_CASE("eta_s examples") {
  const Instance inst = testing::single({1, 1}, {1, 2});
  CHECK(eta_s_value(inst, testing::order({1, 2})) == 0.0);
  const ErrorReport r = eta_s(inst, testing::order({2, 1}), true);
  CHECK(*r.eta_s == 1.0);
  REQUIRE(r.inversions.size() == 1);
  CHECK(r.inversions[0] == std::pair<int, int>{0, 1});

  const Instance im = testing::single({1, 1, 1}, {1, 1, 9});
  const auto pred = length_to_permutation(im.weights(), LengthPrediction{{1, 1, 0}});
  CHECK(pred == testing::order({3, 1, 2}));
  CHECK(eta_s_value(im, pred) == 16.0);
}

TEST_CASE("eta_s matches the pairwise oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 60)(rng);
    const Instance inst = random_instance({EnvKind::single, n, 1, true, false, false, true}, rng);
    const auto pred = random_order(inst.size(), rng);
    const double expected = oracle::eta_s(inst.weights(), inst.lengths(), pred.order());
    CHECK(eta_s_value(inst, pred, Execution::serial) == expected);
    CHECK(eta_s_value(inst, pred, Execution::parallel) == expected);
    const ErrorReport r = eta_s(inst, pred);
    for (double v : r.per_job) CHECK(v >= 0.0);
  }
}

TEST_CASE("inversion kernels agree bit for bit") {
  std::mt19937_64 rng(43);
  for (int n : {1, 2, 63, 64, 65, 1000, 5000}) {
    const Instance inst = random_instance({EnvKind::single, n, 1, true, false, true}, rng);
    const auto pred = random_order(inst.size(), rng);
    const auto truth = wspt_order(inst.weights(), inst.lengths());
    std::vector<int> rank(inst.size());
    for (std::size_t k = 0; k < inst.size(); ++k) rank[static_cast<std::size_t>(pred.order()[k])] = static_cast<int>(k);
    std::vector<double> a(inst.size()), b(inst.size());
    kernels::inversion_contributions_serial(truth, rank, inst.weights(), inst.lengths(), a);
    kernels::inversion_contributions_parallel(truth, rank, inst.weights(), inst.lengths(), b);
    CHECK(a == b);
  }
}

TEST_CASE("W contributions") {
  const Instance inst = testing::single({1, 1}, {2, 1});
  CHECK(w_contributions(inst, testing::order({1, 2})) == std::vector<double>{2, 3});
  CHECK(w_contributions(inst, testing::order({2, 1})) == std::vector<double>{2, 2});
  CHECK(w_contribution(inst, testing::order({1, 2}), 1) == 3.0);

  const Instance lone = testing::unrelated(2, {1, 2, 3, 1}, {2, 5}, {4, 1}, {1, 3});
  const auto apart = PermutationPrediction::assigned({{0}, {1}}, 2);
  CHECK(w_contribution(lone, apart, 0) == Approx(2.0 * (1 + 4)));
  CHECK(w_contribution(lone, apart, 1) == Approx(5.0 * (3 + 1)));

  CHECK_THROWS_AS(w_contributions(testing::identical(2, {1, 1}, {1, 1}), testing::order({1, 2})), Error);
}

TEST_CASE("W contributions sum to the priority objective") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const auto env = static_cast<EnvKind>(trial % 3);
    const int m = env == EnvKind::single ? 1 : 3;
    const Instance inst = random_instance({env, 25, m, true, true}, rng);
    const auto pred = env == EnvKind::single ? random_order(inst.size(), rng) : random_assignment(inst.size(), m, rng);
    const auto w = w_contributions(inst, pred);
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) ==
          Approx(objective(priority_schedule(inst, pred, testing::quiet()), inst.jobs)).epsilon(1e-6));
  }
}

TEST_CASE("eta_r examples") {
  const Instance inst = testing::single({1, 1}, {2, 1});
  const auto ref = reference_prediction(inst);
  CHECK(ref == testing::order({2, 1}));
  CHECK(*eta_r(inst, ref, ref).eta_r == 0.0);
  const ErrorReport r = eta_r(inst, testing::order({1, 2}), ref);
  CHECK(*r.eta_r == 1.0);
  CHECK(r.per_job == std::vector<double>{0.0, 1.0});
  CHECK(*r.eta_r == eta_s_value(inst, testing::order({1, 2})));

  const Instance two = testing::unrelated(1, {1, 1}, {1, 1}, {1, 1});
  CHECK_THROWS_AS(eta_r(two, testing::order({1, 2}), PermutationPrediction::assigned({{0, 1}}, 2)), Error);
}

TEST_CASE("eta_r equals eta_s without releases") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance({EnvKind::single, 30, 1, true, false, false, true}, rng);
    const auto pred = random_order(inst.size(), rng);
    CHECK(*eta_r(inst, pred, reference_prediction(inst)).eta_r == Approx(eta_s_value(inst, pred)).epsilon(1e-12));
  }
}

TEST_CASE("length error measures") {
  const std::vector<double> p{1, 2, 3, 4, 5}, y{0, 1, 2, 3, 4};
  CHECK(ell1(p, y) == 5.0);
  // Element-wise max is p and min is y: SPT sums 35 and 20.
  CHECK(nu(p, y) == 15.0);
  CHECK(nu(p, y) == oracle::spt(p) - oracle::spt(y));
  CHECK(ell1(p, p) == 0.0);
  CHECK(nu(p, p) == 0.0);
  const Instance five = testing::single({1, 1, 1, 1, 5}, p);
  CHECK(eta_s_value(testing::single({1, 1, 1, 1, 1}, p), length_to_permutation(std::vector<double>(5, 1.0), {y})) == 0.0);

  const std::vector<double> pi{1, 1, 9}, yi{1, 1, 0};
  CHECK(ell1(pi, yi) == 9.0);
  CHECK(nu(pi, yi) == 11.0);

  CHECK_THROWS_AS(nu(five, y), Error);
  CHECK_THROWS_AS(nu(testing::identical(2, {1, 1}, {1, 1}), std::vector<double>{1, 1}), Error);
  CHECK_THROWS_AS(nu(testing::single({1, 1}, {1, 1}, {0, 1}), std::vector<double>{1, 1}), Error);
}

TEST_CASE("eta_s is at most n times ell1 for unit weights") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance({EnvKind::single, 40, 1, false, false}, rng);
    const auto y = perturb_lengths(inst.lengths(), NoiseMode::fixed, 3.0, rng);
    const double eta = eta_s_value(inst, length_to_permutation(inst.weights(), y));
    CHECK(eta <= static_cast<double>(inst.size()) * ell1(inst.lengths(), y.y) * (1 + 1e-12) + 1e-9);
  }
}

TEST_CASE("dual fitting on a single job") {
  const double s = 1.0 + std::sqrt(2.0);
  const Instance inst = testing::unrelated(1, {1}, {1}, {s});
  const DualFitReport r = dual_fit_verify(inst, s);
  CHECK(r.feasible);
  CHECK(r.identity_holds);
  REQUIRE(r.solution.a.size() == 1);
  CHECK(r.solution.a[0] == Approx(s));
  CHECK(r.solution.b_at(0, 0) == 1.0);
  for (long t = 1; t < 5; ++t) CHECK(r.solution.b_at(0, t) == 0.0);
  CHECK(r.algorithm_objective == Approx(s));
}

TEST_CASE("dual fitting rejects bad input") {
  const double s = 1.0 + std::sqrt(2.0);
  CHECK_THROWS_AS(dual_fit_verify(testing::unrelated(1, {1}, {1}, {1.0}), s), Error);
  CHECK_THROWS_AS(dual_fit_verify(testing::unrelated(1, {1}, {1}, {s}, {1.0}), s), Error);
  CHECK_THROWS_AS(dual_fit_verify(testing::unrelated(1, {1}, {1}, {1.0}), 1.0), Error);
}

TEST_CASE("dual fitting holds on random multiples") {
  const CheckResult r = check_dual_fitting(20, 5);
  CHECK_MESSAGE(r.passed, describe(r));
}
