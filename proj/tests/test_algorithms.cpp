#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "predsched/checks.hpp"
#include "predsched/errors.hpp"
#include "predsched/min_increase.hpp"
#include "predsched/policies.hpp"
#include "predsched/policy_factory.hpp"
#include "predsched/pts.hpp"
#include "predsched/schedules.hpp"

using namespace predsched;
using doctest::Approx;

TEST_CASE("prediction-clairvoyant wspt") {
  const Instance inst = testing::single({1, 1}, {1, 2});
  CHECK(objective(pc_wspt_single(inst, testing::order({1, 2})), inst.jobs) == 4.0);
  const Schedule s = pc_wspt_single(inst, testing::order({2, 1}));
  CHECK(s.completions == std::vector<double>{3, 2});
  CHECK(objective(s, inst.jobs) == 5.0);
  const Instance lone = testing::single({3}, {7});
  CHECK(objective(pc_wspt_single(lone, testing::order({1})), lone.jobs) == 21.0);

  CHECK_THROWS_AS(pc_wspt_single(testing::single({1, 1}, {1, 1}, {0, 1}), testing::order({1, 2})), Error);
  CHECK_THROWS_AS(pc_wspt_single(testing::identical(2, {1}, {1}), testing::order({1})), Error);
}

TEST_CASE("wspt is optimal against brute force") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 7)(rng);
    const Instance inst = random_instance({EnvKind::single, n, 1, true, false, false, true}, rng);
    const auto w = inst.weights();
    const auto p = inst.lengths();
    const auto order = wspt_order(w, p);
    CHECK(objective(pc_wspt_single(inst, PermutationPrediction::single_order(order)), inst.jobs) ==
          oracle::brute_force_opt(w, p));
  }
}

TEST_CASE("prediction-clairvoyant pwspt") {
  const Instance three = testing::identical(2, {1, 1, 1}, {1, 1, 1});
  CHECK(objective(pc_pwspt_identical(three, testing::order({1, 2, 3})), three.jobs) == 4.0);

  const Instance roomy = testing::identical(4, {1, 2, 3}, {2, 1, 5}, {1, 0, 3});
  const Schedule s = pc_pwspt_identical(roomy, testing::order({3, 1, 2}));
  CHECK(s.completions[0] == Approx(3.0));
  CHECK(s.completions[1] == Approx(1.0));
  CHECK(s.completions[2] == Approx(8.0));

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance inst = random_instance({EnvKind::single, 20, 1, true, false}, rng);
    Instance one_machine = inst;
    one_machine.env = MachineEnvironment::identical(1);
    const auto pred = random_order(inst.size(), rng);
    CHECK(objective(pc_pwspt_identical(one_machine, pred), inst.jobs) ==
          Approx(objective(pc_wspt_single(inst, pred), inst.jobs)));
  }
}

TEST_CASE("min increase costs") {
  const Instance empty = testing::unrelated(2, {1, 2}, {1}, {3});
  const std::vector<std::vector<int>> none(2);
  const std::vector<double> remaining{3};
  const auto c = min_increase_assign(empty, 0, none, remaining);
  CHECK(c.costs == std::vector<double>{3, 6});
  CHECK(c.machine == 0);

  const Instance two = testing::unrelated(2, {1, 1, 1, 1}, {1, 1}, {2, 2});
  const std::vector<double> rem{2, 2};
  const auto first = min_increase_assign(two, 0, none, rem);
  CHECK(first.costs == std::vector<double>{2, 2});
  CHECK(first.machine == 0);
  const std::vector<std::vector<int>> state{{0}, {}};
  const auto second = min_increase_assign(two, 1, state, rem);
  CHECK(second.costs == std::vector<double>{4, 2});
  CHECK(second.machine == 1);

  const MinIncreaseResult result = clairvoyant_minincrease(two);
  CHECK(result.machine_of == std::vector<int>{0, 1});
  CHECK(objective(result.schedule, two.jobs) == 4.0);
}

TEST_CASE("min increase costs sum to its objective") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance({EnvKind::unrelated, 25, 3, true, true}, rng);
    const MinIncreaseResult r = clairvoyant_minincrease(inst);
    double total = 0.0;
    for (double q : r.cost) total += q;
    CHECK(total == Approx(objective(r.schedule, inst.jobs)).epsilon(1e-9));
    // The induced assignment reproduces the schedule.
    const Schedule replay = pc_minincrease_unrelated(inst, r.assignment);
    for (std::size_t j = 0; j < inst.size(); ++j) {
      CHECK(replay.completions[j] == Approx(r.schedule.completions[j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("min increase on one machine is Smith's rule") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const Instance base = random_instance({EnvKind::single, 15, 1, true, false}, rng);
    const Instance inst = testing::unrelated(1, std::vector<double>(base.size(), 1.0), base.weights(), base.lengths());
    CHECK(objective(clairvoyant_minincrease(inst).schedule, inst.jobs) ==
          Approx(smith_objective(inst.weights(), inst.lengths())));
  }
}

TEST_CASE("prediction-clairvoyant min increase") {
  const Instance one = testing::unrelated(1, {1, 1}, {1, 1}, {2, 1});
  const auto pred = PermutationPrediction::assigned({{1, 0}}, 2);
  CHECK(objective(pc_minincrease_unrelated(one, pred), one.jobs) == 4.0);

  const Instance apart = testing::unrelated(2, {1, 3, 2, 1}, {1, 1}, {2, 2}, {1, 0});
  const Schedule s = pc_minincrease_unrelated(apart, PermutationPrediction::assigned({{0}, {1}}, 2));
  CHECK(s.completions[0] == Approx(3.0));
  CHECK(s.completions[1] == Approx(2.0));
}

namespace {

Schedule run_pts(const Instance& inst, std::unique_ptr<RatePolicy> a, std::unique_ptr<RatePolicy> b, double lambda) {
  PtsConfig cfg;
  cfg.lambda = lambda;
  cfg.clairvoyant = std::move(a);
  cfg.robust = std::move(b);
  return pts_combine(inst, std::move(cfg));
}

}  // namespace

TEST_CASE("preferential time sharing examples") {
  const Instance units = testing::single({1, 1}, {1, 1});
  const Schedule a = run_pts(units, std::make_unique<PriorityPolicy>(testing::order({1, 2})),
                             std::make_unique<EquipartitionPolicy>(false), 0.5);
  CHECK(a.completions[0] == Approx(4.0 / 3));
  CHECK(a.completions[1] == Approx(2.0));
  CHECK(objective(a, units.jobs) == Approx(10.0 / 3));

  const Instance uneven = testing::single({1, 1}, {1, 2});
  const Schedule b = run_pts(uneven, std::make_unique<PriorityPolicy>(testing::order({1, 2})),
                             std::make_unique<EquipartitionPolicy>(false), 0.5);
  CHECK(b.completions[0] == Approx(4.0 / 3));
  CHECK(b.completions[1] == Approx(3.0));
  CHECK(objective(b, uneven.jobs) == Approx(13.0 / 3));

  for (double lambda : {0.1, 0.5, 0.9}) {
    const Instance lone = testing::single({2}, {3});
    const Schedule c = run_pts(lone, std::make_unique<PriorityPolicy>(testing::order({1})),
                               std::make_unique<EquipartitionPolicy>(false), lambda);
    CHECK(c.completions[0] == Approx(3.0));
  }

  CHECK_THROWS_AS(PreferentialTimeSharing(std::make_unique<EquipartitionPolicy>(false),
                                          std::make_unique<EquipartitionPolicy>(false), 1.0),
                  Error);
}

TEST_CASE("time sharing round robin with itself is round robin") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_instance({EnvKind::single, 12, 1, false, false}, rng);
    EquipartitionPolicy rr(false);
    const Schedule plain = simulate(inst, rr);
    const Schedule shared = run_pts(inst, std::make_unique<EquipartitionPolicy>(false),
                                    std::make_unique<EquipartitionPolicy>(false), 0.5);
    for (std::size_t j = 0; j < inst.size(); ++j) {
      CHECK(shared.completions[j] == Approx(plain.completions[j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("time sharing hides jobs until their slowed-down release") {
  // Job 2 arrives at 1; A sees it from 1 / (1 - 0.25), B from 1 / 0.25.
  const Instance inst = testing::single({1, 1}, {10, 10}, {0, 1});
  const Schedule s = run_pts(inst, std::make_unique<PriorityPolicy>(testing::order({2, 1})),
                             std::make_unique<EquipartitionPolicy>(false), 0.25);
  for (const auto& seg : s.segments) {
    double rate2 = 0.0;
    for (const auto& e : seg.rates) {
      if (e.job == 1) rate2 += e.rate;
    }
    if (seg.end <= 4.0 / 3 + 1e-12) CHECK(rate2 == 0.0);
    if (seg.start >= 4.0 / 3 - 1e-12 && seg.end <= 4.0 + 1e-12) CHECK(rate2 == Approx(0.75));
    if (seg.start >= 4.0 - 1e-12 && seg.end <= s.completions[1]) CHECK(rate2 == Approx(0.875));
  }
}

TEST_CASE("policy names parse and expand") {
  const PolicySpec spec = parse_policy("pts(wspt, rr, 0.1)");
  CHECK(spec.is_pts());
  CHECK(spec.lambda == 0.1);
  REQUIRE(spec.parts.size() == 2);
  CHECK(spec.parts[0].kind == "wspt");
  CHECK(spec.family() == "pts(wspt,rr)");
  CHECK(spec.uses_prediction());
  CHECK_FALSE(parse_policy("rr").uses_prediction());

  CHECK(split_top_level("rr,pts(wspt,rr),wdeq") == std::vector<std::string>{"rr", "pts(wspt,rr)", "wdeq"});

  const auto expanded = expand_policies({"rr", "pts(wspt,rr)"}, {0.1, 0.9});
  REQUIRE(expanded.size() == 3);
  CHECK(expanded[1].lambda == 0.1);
  CHECK(expanded[2].lambda == 0.9);

  CHECK_THROWS_AS(parse_policy("fifo"), Error);
  CHECK_THROWS_AS(parse_policy("pts(wspt,rr"), Error);
  CHECK_THROWS_AS(parse_policy("pts(wspt,rr,1.5)"), Error);
  CHECK_THROWS_AS(expand_policies({"pts(wspt,rr)"}, {}), Error);
}

TEST_CASE("policy factory checks the environment") {
  const Instance two = testing::identical(2, {1, 1}, {1, 1});
  const auto order = testing::order({1, 2});
  CHECK_THROWS_AS(make_policy(parse_policy("wspt"), two, {&order, nullptr}), Error);
  CHECK_THROWS_AS(make_policy(parse_policy("pwspt"), two, {}), Error);
  const Instance unrel = testing::unrelated(1, {1, 1}, {1, 1}, {1, 1});
  CHECK_THROWS_AS(make_policy(parse_policy("pwspt"), unrel, {&order, nullptr}), Error);
  CHECK_THROWS_AS(make_policy(parse_policy("minincrease"), unrel, {}), Error);
  auto policy = make_policy(parse_policy("pts(pwspt,wdeq,0.5)"), two, {&order, nullptr});
  CHECK(objective(simulate(two, *policy), two.jobs) == Approx(2.0));
}
