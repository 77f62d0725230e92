#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "predsched/pf_solver.hpp"
#include "predsched/policies.hpp"

using namespace predsched;
using doctest::Approx;

namespace {

struct StateFixture {
  Instance inst;
  std::vector<int> alive;
  std::vector<double> remaining;

  PolicyState state() const { return PolicyState{0.0, &inst, alive, remaining}; }
};

StateFixture fixture(Instance inst) {
  StateFixture f;
  f.inst = std::move(inst);
  f.alive.resize(f.inst.size());
  std::iota(f.alive.begin(), f.alive.end(), 0);
  f.remaining = f.inst.lengths();
  return f;
}

std::vector<double> throughput(const Instance& inst, const std::vector<RateEntry>& entries) {
  std::vector<double> q(inst.size(), 0.0);
  for (const auto& e : entries) q[static_cast<std::size_t>(e.job)] += e.rate / inst.env.rate(e.machine, e.job);
  return q;
}

}  // namespace

TEST_CASE("weighted round robin") {
  auto f = fixture(testing::single({1, 3}, {1, 1}));
  const auto r = wrr_rates(f.state());
  CHECK(r[0] == Approx(0.25));
  CHECK(r[1] == Approx(0.75));

  auto one = fixture(testing::single({1}, {1}));
  CHECK(wrr_rates(one.state())[0] == Approx(1.0));

  auto four = fixture(testing::single({1, 1, 1, 1}, {1, 2, 3, 4}));
  for (double v : wrr_rates(four.state())) CHECK(v == Approx(0.25));
}

TEST_CASE("weighted dynamic equipartition") {
  auto f = fixture(testing::identical(2, {3, 1, 1, 1}, {1, 1, 1, 1}));
  const auto r = wdeq_rates(f.state(), 2);
  CHECK(r[0] == Approx(1.0));
  for (int k = 1; k < 4; ++k) CHECK(r[static_cast<std::size_t>(k)] == Approx(1.0 / 3));

  auto g = fixture(testing::single({1, 3, 2}, {1, 1, 1}));
  const auto a = wdeq_rates(g.state(), 1);
  const auto b = wrr_rates(g.state());
  for (std::size_t k = 0; k < 3; ++k) CHECK(a[k] == Approx(b[k]));

  auto lone = fixture(testing::identical(2, {4}, {1}));
  CHECK(wdeq_rates(lone.state(), 2)[0] == Approx(1.0));
}

TEST_CASE("water filling conserves capacity") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 30)(rng);
    const double cap = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (auto& v : w) v = 1.0 / std::sqrt(1.0 - std::generate_canonical<double, 64>(rng));
    const auto r = water_fill(w, cap);
    CHECK(std::accumulate(r.begin(), r.end(), 0.0) == Approx(std::min<double>(cap, n)));
    for (double v : r) CHECK(v <= 1.0 + 1e-12);
    // Uncapped jobs keep shares proportional to their weights.
    for (std::size_t a = 0; a < w.size(); ++a) {
      for (std::size_t b = 0; b < w.size(); ++b) {
        if (r[a] < 1.0 - 1e-12 && r[b] < 1.0 - 1e-12) CHECK(r[a] * w[b] == Approx(r[b] * w[a]));
      }
    }
  }
}

TEST_CASE("proportional fairness examples") {
  auto f = fixture(testing::single({1, 3}, {1, 1}));
  const auto q = throughput(f.inst, pf_rates(f.state()));
  CHECK(q[0] == Approx(0.25));
  CHECK(q[1] == Approx(0.75));

  auto lone = fixture(testing::unrelated(3, {3, 1.5, 2}, {2}, {1}));
  const auto entries = pf_rates(lone.state());
  CHECK(throughput(lone.inst, entries)[0] == Approx(1.0 / 1.5).epsilon(1e-5));

  auto diag = fixture(testing::unrelated(2, {1, 100, 100, 1}, {1, 1}, {1, 1}));
  double off = 0.0;
  std::vector<double> on(2, 0.0);
  for (const auto& e : pf_rates(diag.state())) {
    if (e.machine == e.job) {
      on[static_cast<std::size_t>(e.job)] += e.rate;
    } else {
      off += e.rate;
    }
  }
  CHECK(on[0] == Approx(1.0).epsilon(1e-5));
  CHECK(on[1] == Approx(1.0).epsilon(1e-5));
  CHECK(off < 1e-5);
}

TEST_CASE("proportional fairness solver meets its tolerance") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 25)(rng);
    const int m = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<double> w(static_cast<std::size_t>(n)), rates(static_cast<std::size_t>(n * m));
    for (auto& v : w) v = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
    for (auto& v : rates) v = std::uniform_real_distribution<double>(1.0, 4.0)(rng);
    const PfSolution sol = solve_proportional_fairness(w, rates, m);
    CHECK(sol.kkt_residual <= 1e-6);
    for (int i = 0; i < m; ++i) {
      double load = 0.0;
      for (int j = 0; j < n; ++j) load += sol.x[static_cast<std::size_t>(i * n + j)];
      CHECK(load <= 1.0 + 1e-9);
    }
    for (int j = 0; j < n; ++j) {
      double share = 0.0;
      for (int i = 0; i < m; ++i) {
        const double x = sol.x[static_cast<std::size_t>(i * n + j)];
        CHECK(x >= 0.0);
        share += x;
      }
      CHECK(share <= 1.0 + 1e-9);
      CHECK(sol.throughput[static_cast<std::size_t>(j)] > 0.0);
    }
  }
}

TEST_CASE("proportional fairness beats perturbed allocations") {
  const std::vector<double> w{1, 2, 0.5};
  const std::vector<double> rates{1, 2, 3, 3, 1, 2};
  const PfSolution sol = solve_proportional_fairness(w, rates, 2);
  const auto value = [&](const std::vector<double>& x) {
    double total = 0.0;
    for (std::size_t j = 0; j < 3; ++j) total += w[j] * std::log(x[j] / rates[j] + x[3 + j] / rates[3 + j]);
    return total;
  };
  const double best = value(sol.x);
  // The barrier stops at mu = 1e-7; its duality gap is mu per barrier term.
  const double gap = 1e-7 * (6 + 2 + 3);
  // Moving mass between two jobs on a machine keeps the allocation feasible.
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        auto x = sol.x;
        const double d = std::min(0.01, x[i * 3 + a]);
        if (a == b || d <= 0.0) continue;
        x[i * 3 + a] -= d;
        x[i * 3 + b] += d;
        double share = x[b] + x[3 + b];
        if (share > 1.0) continue;
        CHECK(value(x) <= best + gap);
      }
    }
  }
}
