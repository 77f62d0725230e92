// One PASS/FAIL line per acceptance criterion. Exit status 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "predsched/checks.hpp"
#include "predsched/errors.hpp"
#include "predsched/experiments.hpp"
#include "predsched/instance_io.hpp"
#include "predsched/learn.hpp"
#include "predsched/policies.hpp"
#include "predsched/report.hpp"
#include "predsched/schedules.hpp"

using namespace predsched;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("aborted: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > time_limit) {
    out.passed = false;
    out.detail += " over the time limit of " + format_double(time_limit) + " s";
  }
  if (!out.passed) ++failures;
  std::printf("%s  %2d  %s  [%.1f s]  %s\n", out.passed ? "PASS" : "FAIL", id, title.c_str(), seconds,
              out.detail.c_str());
  std::fflush(stdout);
}

Outcome from_checks(std::initializer_list<CheckResult> results) {
  Outcome out;
  for (const auto& r : results) {
    if (!r.passed) out.passed = false;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += r.name + ": " + std::to_string(r.trials - r.failures) + "/" + std::to_string(r.trials) +
                  ", worst margin " + format_double(r.worst);
    if (!r.passed) out.detail += " (first failure seed " + std::to_string(r.failing_seed) + ": " + r.detail + ")";
  }
  return out;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

constexpr std::uint64_t kSeed = 20240601;

}  // namespace

int main() {
  criterion(1, "Smith's rule equals the brute-force optimum", 30, [] {
    std::mt19937_64 rng(kSeed + 1);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const Instance inst = random_instance({EnvKind::single, uniform_int(rng, 1, 8), 1, true, false, false, true}, rng);
      const auto w = inst.weights();
      const auto p = inst.lengths();
      const auto order = PermutationPrediction::single_order(wspt_order(w, p));
      if (objective(pc_wspt_single(inst, order), inst.jobs) != oracle::brute_force_opt(w, p)) ++mismatches;
    }
    return Outcome{mismatches == 0, std::to_string(200 - mismatches) + "/200 exact"};
  });

  criterion(2, "wspt on a predicted order costs OPT + eta_s", 30, [] {
    std::mt19937_64 rng(kSeed + 2);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const Instance inst = random_instance({EnvKind::single, uniform_int(rng, 1, 50), 1, true, false}, rng);
      const auto pred = random_order(inst.size(), rng);
      const auto w = inst.weights();
      const auto p = inst.lengths();
      const double opt = oracle::sequence_cost(wspt_order(w, p), w, p);
      const double expected = opt + oracle::eta_s(w, p, pred.order());
      const double alg = objective(pc_wspt_single(inst, pred), inst.jobs);
      worst = std::max(worst, std::abs(alg - expected) / expected);
    }
    return Outcome{worst <= 1e-9, "1000 instances, worst relative gap " + format_double(worst)};
  });

  criterion(3, "time sharing obeys min{(1+eta/OPT)/(1-lambda), 2/lambda}", 60, [] {
    static const double lambdas[] = {0.1, 0.5, 0.9};
    return from_checks({check_pts_bound(1000, 50, lambdas, kSeed + 3)});
  });

  criterion(4, "pwspt obeys the three-term bound", 60,
            [] { return from_checks({check_pwspt_bound(500, 200, kSeed + 4)}); });

  criterion(5, "eta_r = eta_s and eta_s <= n ell1", 60, [] {
    return from_checks({check_eta_r_equals_eta_s(500, 50, kSeed + 5), check_eta_s_ell1_bound(1000, 50, kSeed + 5)});
  });

  criterion(6, "min increase dual fitting is feasible with the gap identity", 120,
            [] { return from_checks({check_dual_fitting(50, kSeed + 6)}); });

  criterion(7, "round robin is 2-competitive", 60, [] {
    std::mt19937_64 rng(kSeed + 7);
    double worst = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 500; ++trial) {
      const Instance inst = random_instance({EnvKind::single, uniform_int(rng, 1, 50), 1, false, false}, rng);
      EquipartitionPolicy rr(false);
      SimulationOptions quiet;
      quiet.record_segments = false;
      const double alg = objective(simulate(inst, rr, quiet), inst.jobs);
      const double opt = oracle::spt(inst.lengths());
      ok = ok && alg <= 2.0 * opt + 1e-6;
      worst = std::max(worst, alg / opt);
    }
    return Outcome{ok, "500 instances, worst ratio " + fmt(worst)};
  });

  criterion(8, "sensitivity, single machine", 300, [] {
    ExperimentConfig cfg;
    cfg.algorithms = {"rr", "pts(wspt,rr)"};
    cfg.lambdas = {0.1};
    cfg.seed = kSeed + 8;
    std::map<std::string, std::map<double, double>> mean;
    for (const auto& c : summarize(run_sensitivity(cfg))) mean[c.algorithm][c.x] = c.mean_ratio;
    const auto& pts = mean["pts(wspt,rr)"];
    const auto& rr = mean["rr"];
    bool ok = pts.at(0.0) <= 1.15 && pts.at(0.0) < rr.at(0.0);
    double rr_lo = 1e300, rr_hi = 0.0, crossover = NAN;
    for (const auto& [omega, ratio] : rr) {
      rr_lo = std::min(rr_lo, ratio);
      rr_hi = std::max(rr_hi, ratio);
      if (omega <= 10.0) ok = ok && pts.at(omega) <= ratio;
      if (std::isnan(crossover) && pts.at(omega) > ratio) crossover = omega;
    }
    const double spread = (rr_hi - rr_lo) / rr_lo;
    ok = ok && spread < 0.01;
    return Outcome{ok, "pts(0.1) at omega 0: " + fmt(pts.at(0.0)) + ", rr: " + fmt(rr.at(0.0)) + ", pts at omega 10: " +
                           fmt(pts.at(10.0)) + ", rr spread " + format_double(spread) + ", first omega with pts > rr: " +
                           (std::isnan(crossover) ? std::string("none") : format_double(crossover))};
  });

  criterion(9, "online learning, single machine", 300, [] {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::online;
    cfg.algorithms = {"rr", "pts(wspt,rr)"};
    cfg.lambdas = {0.1};
    cfg.seed = kSeed + 9;
    const OnlineResult result = run_online_learning(cfg);
    std::map<std::string, std::map<double, double>> med;
    for (const auto& c : summarize(result.records)) med[c.algorithm][c.x] = c.median_ratio;
    const double pts1 = med["pts(wspt,rr)"].at(1.0);
    const double rr1 = med["rr"].at(1.0);
    std::vector<double> error;
    for (int t = 0; t < cfg.rounds; ++t) {
      std::vector<double> column;
      for (const auto& rep : result.learning_error) column.push_back(rep[static_cast<std::size_t>(t)]);
      error.push_back(median(column));
    }
    bool non_increasing = true;
    for (std::size_t t = 1; t < error.size(); ++t) non_increasing = non_increasing && error[t] <= error[t - 1];
    std::string trace;
    for (double e : error) trace += (trace.empty() ? "" : " ") + format_double(std::round(e));
    return Outcome{pts1 < rr1 && non_increasing, "round 1 median pts(0.1) " + fmt(pts1) + " vs rr " + fmt(rr1) +
                                                     ", median error by round: " + trace};
  });

  criterion(10, "sensitivity, identical machines", 600, [] {
    ExperimentConfig cfg;
    cfg.env = EnvKind::identical;
    cfg.m = 5;
    cfg.algorithms = {"wdeq", "pts(pwspt,wdeq)"};
    cfg.seed = kSeed + 10;
    const auto records = run_sensitivity(cfg);
    bool bound = true;
    std::size_t checked = 0;
    for (const auto& r : records) {
      if (!r.lambda) continue;
      ++checked;
      bound = bound && r.objective <= 3.0 / *r.lambda * r.baseline + 1e-6;
    }
    double pts0 = NAN, wdeq0 = NAN;
    for (const auto& c : summarize(records)) {
      if (c.x != 0.0) continue;
      if (c.algorithm == "wdeq") wdeq0 = c.mean_ratio;
      if (c.lambda && *c.lambda == 0.1) pts0 = c.mean_ratio;
    }
    return Outcome{bound && pts0 < wdeq0, "omega 0: pts(0.1) " + fmt(pts0) + " vs wdeq " + fmt(wdeq0) + ", " +
                                              std::to_string(checked) + " pts rows within 3/lambda"};
  });

  criterion(11, "erm attains the brute-force minimum error", 60, [] {
    std::mt19937_64 rng(kSeed + 11);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = uniform_int(rng, 1, 6);
      const int z = uniform_int(rng, 1, 5);
      std::vector<double> w(static_cast<std::size_t>(n));
      for (auto& v : w) v = uniform_int(rng, 1, 10);
      SampleSet set;
      std::vector<std::vector<double>> lengths;
      for (int s = 0; s < z; ++s) {
        std::vector<double> p(static_cast<std::size_t>(n));
        for (auto& v : p) v = uniform_int(rng, 1, 20);
        lengths.push_back(p);
        Instance inst;
        inst.jobs = make_jobs(w, p);
        set.samples.push_back(std::move(inst));
      }
      const auto learned = erm_learn(set);
      if (oracle::mean_eta_s(w, lengths, learned.order()) != oracle::brute_force_min_error(w, lengths)) ++mismatches;
    }
    return Outcome{mismatches == 0, std::to_string(100 - mismatches) + "/100 exact"};
  });

  criterion(12, "monotonicity under shrinking", 300, [] {
    Outcome out;
    for (const auto& policy : monotone_policies()) {
      const CheckResult r = check_monotonicity(policy, 500, kSeed + 12);
      if (!r.passed) out.passed = false;
      out.detail += (out.detail.empty() ? "" : ", ") + policy + " " + std::to_string(r.trials - r.failures) + "/" +
                    std::to_string(r.trials);
      if (!r.passed) out.detail += " (seed " + std::to_string(r.failing_seed) + ": " + r.detail + ")";
    }
    return out;
  });

  criterion(13, "identical config and seed give byte-identical csv", 120, [] {
    ExperimentConfig cfg;
    cfg.runs = 3;
    cfg.seed = kSeed + 13;
    const std::string a_path = "acceptance_a.csv", b_path = "acceptance_b.csv";
    save_csv(a_path, run_experiment(cfg));
    save_csv(b_path, run_experiment(cfg));
    const auto slurp = [](const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      return s.str();
    };
    const std::string a = slurp(a_path), b = slurp(b_path);
    std::remove(a_path.c_str());
    std::remove(b_path.c_str());
    return Outcome{!a.empty() && a == b, std::to_string(a.size()) + " bytes each"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
