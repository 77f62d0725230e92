#include "predsched/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "predsched/dual_fit.hpp"
#include "predsched/errors.hpp"
#include "predsched/experiments.hpp"
#include "predsched/instance_io.hpp"
#include "predsched/learn.hpp"
#include "predsched/policy_factory.hpp"
#include "predsched/schedules.hpp"

namespace predsched {

namespace {

SimulationOptions quiet() {
  SimulationOptions options;
  options.record_segments = false;
  return options;
}

class Tracker {
 public:
  explicit Tracker(std::string name) { result_.name = std::move(name); }

  // excess = (lhs - rhs) / scale of the checked inequality.
  void record(bool ok, double excess, std::uint64_t seed, int n, const std::string& detail) {
    ++result_.trials;
    result_.worst = std::max(result_.worst, excess);
    if (ok) return;
    ++result_.failures;
    result_.passed = false;
    if (result_.failures == 1 || n < result_.failing_n) {
      result_.failing_seed = seed;
      result_.failing_n = n;
      result_.detail = detail;
    }
  }
  CheckResult done() { return std::move(result_); }

 private:
  CheckResult result_;
};

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double run_policy(const std::string& name, const Instance& instance, const PredictionInputs& inputs) {
  auto policy = make_policy(parse_policy(name), instance, inputs);
  return objective(simulate(instance, *policy, quiet()), instance.jobs);
}

std::string pair_detail(const char* what, double lhs, double rhs) {
  return std::string(what) + ": " + format_double(lhs) + " vs " + format_double(rhs);
}

}  // namespace

Instance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(spec.n);
  std::vector<double> w(n, 1.0), p(n), r(n, 0.0);
  std::uniform_real_distribution<double> length(0.1, 10.0);
  std::uniform_real_distribution<double> weight(0.1, 10.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (spec.integral) {
      p[j] = uniform_int(rng, 1, 20);
      if (spec.weighted) w[j] = uniform_int(rng, 1, 10);
    } else {
      p[j] = spec.pareto ? 1.0 / std::pow(1.0 - std::generate_canonical<double, 64>(rng), 1.0 / 1.1) : length(rng);
      if (spec.weighted) {
        w[j] = spec.pareto ? 1.0 / std::sqrt(1.0 - std::generate_canonical<double, 64>(rng)) : weight(rng);
      }
    }
    if (spec.releases) {
      // Pareto(2, 1) releases for Pareto instances, small integers otherwise
      // so that simultaneous releases occur.
      r[j] = spec.pareto ? 1.0 / std::sqrt(1.0 - std::generate_canonical<double, 64>(rng)) : uniform_int(rng, 0, 5);
    }
  }
  Instance instance;
  instance.jobs = make_jobs(w, p, r);
  switch (spec.env) {
    case EnvKind::single: instance.env = MachineEnvironment::single(); break;
    case EnvKind::identical: instance.env = MachineEnvironment::identical(spec.m); break;
    case EnvKind::unrelated: {
      std::uniform_real_distribution<double> rate(1.0, 4.0);
      std::vector<double> rates(static_cast<std::size_t>(spec.m) * n);
      for (double& v : rates) v = rate(rng);
      instance.env = MachineEnvironment::unrelated(spec.m, std::move(rates));
      break;
    }
  }
  return instance;
}

PermutationPrediction random_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return PermutationPrediction::single_order(std::move(order));
}

PermutationPrediction random_assignment(std::size_t n, int machines, std::mt19937_64& rng) {
  std::vector<std::vector<int>> orders(static_cast<std::size_t>(machines));
  std::vector<int> jobs(n);
  std::iota(jobs.begin(), jobs.end(), 0);
  std::shuffle(jobs.begin(), jobs.end(), rng);
  for (int j : jobs) orders[static_cast<std::size_t>(uniform_int(rng, 0, machines - 1))].push_back(j);
  return PermutationPrediction::assigned(std::move(orders), n);
}

// Mixes uniformly random orders with orders from noisy length predictions,
// which sit much closer to the true order.
static PermutationPrediction random_prediction(const Instance& instance, std::mt19937_64& rng) {
  if (rng() % 2 == 0) return random_order(instance.size(), rng);
  const double omega = std::uniform_real_distribution<double>(0.0, 5.0)(rng);
  return length_to_permutation(instance.weights(), perturb_lengths(instance.lengths(), NoiseMode::fixed, omega, rng));
}

CheckResult check_wspt_identity(std::size_t trials, int max_n, std::uint64_t seed) {
  Tracker t("wspt objective = OPT + eta_s");
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 11, k);
    std::mt19937_64 rng(s);
    const Instance inst = random_instance({EnvKind::single, uniform_int(rng, 1, max_n), 1, true, false}, rng);
    const auto pred = random_prediction(inst, rng);
    const double alg = objective(pc_wspt_single(inst, pred), inst.jobs);
    const double expected = smith_objective(inst.weights(), inst.lengths()) + eta_s_value(inst, pred);
    const double rel = std::abs(alg - expected) / std::max(1.0, expected);
    t.record(rel <= 1e-9, rel - 1e-9, s, static_cast<int>(inst.size()), pair_detail("objective vs OPT+eta", alg, expected));
  }
  return t.done();
}

CheckResult check_pts_bound(std::size_t trials, int max_n, std::span<const double> lambdas, std::uint64_t seed) {
  Tracker t("pts <= min{(OPT+eta_s)/(1-lambda), 2 OPT/lambda}");
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 12, k);
    std::mt19937_64 rng(s);
    const Instance inst = random_instance({EnvKind::single, uniform_int(rng, 1, max_n), 1, true, false}, rng);
    const auto pred = random_prediction(inst, rng);
    const double opt = smith_objective(inst.weights(), inst.lengths());
    const double eta = eta_s_value(inst, pred);
    for (double lambda : lambdas) {
      const PolicySpec spec = parse_policy("pts(wspt,wrr," + format_double(lambda) + ")");
      auto policy = make_policy(spec, inst, {&pred, nullptr});
      const double alg = objective(simulate(inst, *policy, quiet()), inst.jobs);
      const double bound = std::min((opt + eta) / (1.0 - lambda), 2.0 * opt / lambda);
      t.record(alg <= bound + 1e-6, (alg - bound) / std::max(1.0, bound), s, static_cast<int>(inst.size()),
               "lambda " + format_double(lambda) + " " + pair_detail("objective vs bound", alg, bound));
    }
  }
  return t.done();
}

CheckResult check_pwspt_bound(std::size_t trials, int max_n, std::uint64_t seed) {
  Tracker t("pwspt <= sum w(r+p) + prefix/m + eta_s/m");
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 13, k);
    std::mt19937_64 rng(s);
    const int m = rng() % 2 == 0 ? 2 : 5;
    RandomInstanceSpec spec{EnvKind::identical, uniform_int(rng, 1, max_n), m, true, true, true};
    const Instance inst = random_instance(spec, rng);
    const auto pred = random_prediction(inst, rng);
    const double alg = objective(pc_pwspt_identical(inst, pred), inst.jobs);
    const auto w = inst.weights();
    const auto p = inst.lengths();
    double bound = 0.0, prefix = 0.0, weighted_prefix = 0.0;
    for (int j : wspt_order(w, p)) {
      const auto ju = static_cast<std::size_t>(j);
      bound += w[ju] * (inst.jobs[ju].release + p[ju]);
      prefix += p[ju];
      weighted_prefix += w[ju] * prefix;
    }
    bound += (weighted_prefix + eta_s_value(inst, pred)) / m;
    t.record(alg <= bound + 1e-6, (alg - bound) / std::max(1.0, bound), s, static_cast<int>(inst.size()),
             pair_detail("objective vs bound", alg, bound));
  }
  return t.done();
}

CheckResult check_eta_r_equals_eta_s(std::size_t trials, int max_n, std::uint64_t seed) {
  Tracker t("eta_r = eta_s without releases");
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 14, k);
    std::mt19937_64 rng(s);
    const Instance inst = random_instance({EnvKind::single, uniform_int(rng, 1, max_n), 1, true, false}, rng);
    const auto pred = random_prediction(inst, rng);
    const double es = eta_s_value(inst, pred);
    const double er = *eta_r(inst, pred, reference_prediction(inst)).eta_r;
    const double scale = std::max(1.0, smith_objective(inst.weights(), inst.lengths()));
    const double rel = std::abs(es - er) / scale;
    t.record(rel <= 1e-9, rel - 1e-9, s, static_cast<int>(inst.size()), pair_detail("eta_r vs eta_s", er, es));
  }
  return t.done();
}

CheckResult check_eta_s_ell1_bound(std::size_t trials, int max_n, std::uint64_t seed) {
  Tracker t("eta_s <= n * ell1 (unit weights)");
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 15, k);
    std::mt19937_64 rng(s);
    const Instance inst = random_instance({EnvKind::single, uniform_int(rng, 1, max_n), 1, false, false}, rng);
    const double omega = std::uniform_real_distribution<double>(0.0, 10.0)(rng);
    const auto y = perturb_lengths(inst.lengths(), NoiseMode::fixed, omega, rng);
    const double eta = eta_s_value(inst, length_to_permutation(inst.weights(), y));
    const double bound = static_cast<double>(inst.size()) * ell1(inst.lengths(), y.y);
    t.record(eta <= bound * (1.0 + 1e-12) + 1e-9, (eta - bound) / std::max(1.0, bound), s,
             static_cast<int>(inst.size()), pair_detail("eta_s vs n*ell1", eta, bound));
  }
  return t.done();
}

CheckResult check_decomposition(std::size_t trials, int max_n, std::uint64_t seed) {
  Tracker t("sum of W_j = priority objective");
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 16, k);
    std::mt19937_64 rng(s);
    const auto env = static_cast<EnvKind>(k % 3);
    const int m = env == EnvKind::single ? 1 : uniform_int(rng, 2, 4);
    const Instance inst = random_instance({env, uniform_int(rng, 1, max_n), m, true, true}, rng);
    const auto pred = env == EnvKind::single ? random_order(inst.size(), rng) : random_assignment(inst.size(), m, rng);
    const auto w = w_contributions(inst, pred);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const double obj = objective(priority_schedule(inst, pred, quiet()), inst.jobs);
    const double rel = std::abs(total - obj) / std::max(1.0, obj);
    t.record(rel <= 1e-6, rel - 1e-6, s, static_cast<int>(inst.size()),
             std::string(to_string(env)) + " " + pair_detail("sum W vs objective", total, obj));
  }
  return t.done();
}

CheckResult check_dual_fitting(std::size_t trials, std::uint64_t seed) {
  Tracker t("MinIncrease dual fitting");
  const double s_param = 1.0 + std::sqrt(2.0);
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 17, k);
    std::mt19937_64 rng(s);
    const int n = uniform_int(rng, 1, 20);
    const int m = uniform_int(rng, 1, 4);
    const auto nu = static_cast<std::size_t>(n);
    std::vector<double> w(nu), p(nu), r(nu), rates(static_cast<std::size_t>(m) * nu);
    for (std::size_t j = 0; j < nu; ++j) {
      const int base = uniform_int(rng, 1, 10);
      w[j] = std::uniform_real_distribution<double>(0.5, 5.0)(rng);
      p[j] = s_param * base;
      r[j] = s_param * uniform_int(rng, 1, 10);
      // l_ij = k / base makes p_ij = s * k with k in 1..10.
      for (int i = 0; i < m; ++i) {
        rates[static_cast<std::size_t>(i) * nu + j] = static_cast<double>(uniform_int(rng, 1, 10)) / base;
      }
    }
    Instance inst;
    inst.jobs = make_jobs(w, p, r);
    inst.env = MachineEnvironment::unrelated(m, std::move(rates));
    const DualFitReport report = dual_fit_verify(inst, s_param);
    std::string detail = "identity error " + format_double(report.identity_error) + ", max violation " +
                         format_double(report.max_violation);
    if (report.violation) {
      const auto& v = *report.violation;
      detail += " at machine " + std::to_string(v[0] + 1) + " job " + std::to_string(v[1] + 1) + " slot " +
                std::to_string(v[2]);
    }
    t.record(report.feasible && report.identity_holds, std::max(report.max_violation, report.identity_error - 1e-6), s,
             n, detail);
  }
  return t.done();
}

CheckResult check_rr_two_competitive(std::size_t trials, int max_n, std::uint64_t seed) {
  Tracker t("rr <= 2 OPT (unit weights)");
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 18, k);
    std::mt19937_64 rng(s);
    const Instance inst = random_instance({EnvKind::single, uniform_int(rng, 1, max_n), 1, false, false}, rng);
    const double alg = run_policy("rr", inst, {});
    const double opt = smith_objective(inst.weights(), inst.lengths());
    t.record(alg <= 2.0 * opt + 1e-6, (alg - 2.0 * opt) / std::max(1.0, opt), s, static_cast<int>(inst.size()),
             pair_detail("objective vs 2 OPT", alg, 2.0 * opt));
  }
  return t.done();
}

CheckResult check_monotonicity(const std::string& policy, std::size_t trials, std::uint64_t seed) {
  Tracker t("monotonicity of " + policy);
  const double tol = policy == "pf" ? 1e-4 : 1e-6;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, 19, std::hash<std::string>{}(policy), k);
    std::mt19937_64 rng(s);
    RandomInstanceSpec spec;
    std::string name = policy;
    if (policy == "rr") {
      spec = {EnvKind::single, uniform_int(rng, 1, 30), 1, false, true};
    } else if (policy == "wrr") {
      spec = {EnvKind::single, uniform_int(rng, 1, 30), 1, true, true};
    } else if (policy == "wdeq" || policy == "pwspt") {
      spec = {EnvKind::identical, uniform_int(rng, 1, 30), uniform_int(rng, 2, 4), true, true};
    } else if (policy == "pf") {
      spec = {EnvKind::unrelated, uniform_int(rng, 1, 6), uniform_int(rng, 2, 3), true, true};
    } else if (policy == "wspt") {
      spec = {EnvKind::single, uniform_int(rng, 1, 30), 1, true, false};
    } else if (policy == "minincrease") {
      spec = {EnvKind::unrelated, uniform_int(rng, 1, 30), uniform_int(rng, 2, 4), true, true};
    } else if (policy == "pts") {
      const double lambda = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
      if (k % 2 == 0) {
        spec = {EnvKind::single, uniform_int(rng, 1, 30), 1, true, false};
        name = "pts(wspt,wrr," + format_double(lambda) + ")";
      } else {
        spec = {EnvKind::identical, uniform_int(rng, 1, 30), uniform_int(rng, 2, 4), true, true};
        name = "pts(pwspt,wdeq," + format_double(lambda) + ")";
      }
    } else {
      throw Error("no monotonicity suite for policy '" + policy + "'");
    }
    const Instance inst = random_instance(spec, rng);
    const auto order = random_order(inst.size(), rng);
    const auto assignment = random_assignment(inst.size(), inst.machines(), rng);
    const PredictionInputs inputs{&order, &assignment};
    auto shrunk_lengths = inst.lengths();
    for (double& p : shrunk_lengths) p *= 1.0 - std::generate_canonical<double, 64>(rng);
    const Instance shrunk = inst.with_lengths(shrunk_lengths);
    const double before = run_policy(name, inst, inputs);
    const double after = run_policy(name, shrunk, inputs);
    const double excess = (after - before) / std::max(1.0, before);
    t.record(excess <= tol, excess - tol, s, static_cast<int>(inst.size()),
             name + " " + pair_detail("shrunk vs original objective", after, before));
  }
  return t.done();
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  const bool all = suite == "all";
  if (!all && suite != "lemmas" && suite != "dual" && suite != "props") {
    throw Error("unknown suite '" + suite + "' (expected lemmas, dual, props or all)");
  }
  std::vector<CheckResult> out;
  const auto run = [&](const std::string& name, auto&& check) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      CheckResult failed;
      failed.name = name;
      failed.passed = false;
      failed.detail = std::string("aborted: ") + e.what();
      out.push_back(std::move(failed));
    }
  };
  if (all || suite == "lemmas") {
    static const double lambdas[] = {0.1, 0.5, 0.9};
    run("wspt identity", [&] { return check_wspt_identity(1000, 50, seed); });
    run("pts bound", [&] { return check_pts_bound(1000, 50, lambdas, seed); });
    run("pwspt bound", [&] { return check_pwspt_bound(500, 200, seed); });
  }
  if (all || suite == "dual") run("dual fitting", [&] { return check_dual_fitting(50, seed); });
  if (all || suite == "props") {
    run("eta_r = eta_s", [&] { return check_eta_r_equals_eta_s(500, 50, seed); });
    run("eta_s <= n ell1", [&] { return check_eta_s_ell1_bound(1000, 50, seed); });
    run("decomposition", [&] { return check_decomposition(300, 40, seed); });
    run("rr 2-competitive", [&] { return check_rr_two_competitive(500, 50, seed); });
    for (const auto& policy : monotone_policies()) {
      run("monotonicity of " + policy, [&] { return check_monotonicity(policy, 500, seed); });
    }
  }
  return out;
}

std::string describe(const CheckResult& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.trials << " trials";
  if (!r.passed) out << ", " << r.failures << " failed";
  out << ")";
  if (r.trials > 0) out << "  worst margin " << format_double(r.worst);
  if (!r.passed && r.trials == 0) {
    out << "\n      " << r.detail;
  } else if (!r.passed) {
    out << "\n      first failure: seed " << r.failing_seed << ", n = " << r.failing_n << ": " << r.detail;
  }
  return out.str();
}

}  // namespace predsched
