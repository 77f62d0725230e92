#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "predsched/checks.hpp"
#include "predsched/experiments.hpp"
#include "predsched/instance_io.hpp"
#include "predsched/policy_factory.hpp"
#include "predsched/report.hpp"

using namespace predsched;

namespace {

constexpr int kUsageError = 2;
constexpr int kVerifyFailure = 1;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const auto& item : split_top_level(text)) out.push_back(parse_double(item));
  return out;
}

struct Options {
  std::string dist = "pareto";
  int n = 1000;
  int m = 1;
  std::string env = "single";
  std::string algos;
  std::string lambdas = "0.1,0.5,0.9";
  std::string omegas;
  double gamma = 10.0;
  int rounds = 10;
  int runs = 10;
  std::uint64_t seed = 1;
  std::string out;
};

ExperimentConfig to_config(const Options& o, ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  c.distribution = distribution_from_string(o.dist);
  c.n = o.n;
  c.env = env_kind_from_string(o.env);
  c.m = o.m;
  if (!o.algos.empty()) c.algorithms = split_top_level(o.algos);
  c.lambdas = parse_list(o.lambdas);
  if (!o.omegas.empty()) c.omegas = parse_list(o.omegas);
  c.gamma = o.gamma;
  c.rounds = o.rounds;
  c.runs = o.runs;
  c.seed = o.seed;
  c.out = o.out;
  c.validate();
  return c;
}

void emit_csv(const std::vector<ExperimentRecord>& records, const std::string& path) {
  for (const auto& r : records) {
    if (!r.error.empty()) {
      std::cerr << "warning: " << r.algorithm << " run " << r.run << " x=" << format_double(r.x) << ": " << r.error
                << '\n';
    }
  }
  if (path.empty()) {
    write_csv(std::cout, records);
  } else {
    save_csv(path, records);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning-augmented scheduling with permutation predictions"};
  app.set_config("--config", "", "Read options from a file with one 'key = value' per line");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--dist", o.dist, "Processing time distribution: pareto, exponential or weibull");
  app.add_option("--n", o.n, "Jobs per instance");
  app.add_option("--m", o.m, "Machines (identical and unrelated environments)");
  app.add_option("--env", o.env, "Machine environment: single, identical or unrelated");
  app.add_option("--algos", o.algos, "Comma-separated policies, e.g. rr,pts(wspt,rr)")
      ->multi_option_policy(CLI::MultiOptionPolicy::Join)
      ->delimiter(',');
  app.add_option("--lambdas", o.lambdas, "Comma-separated lambda values for pts entries without one")
      ->multi_option_policy(CLI::MultiOptionPolicy::Join)
      ->delimiter(',');
  app.add_option("--omegas", o.omegas, "Comma-separated noise levels for the sensitivity experiment")
      ->multi_option_policy(CLI::MultiOptionPolicy::Join)
      ->delimiter(',');
  app.add_option("--gamma", o.gamma, "Noise scale for the online-learning experiment");
  app.add_option("--rounds", o.rounds, "Rounds of the online-learning experiment");
  app.add_option("--runs", o.runs, "Independent runs (repetitions)");
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--out", o.out, "Output file (stdout when omitted)");

  auto* generate = app.add_subcommand("generate", "Write a random instance");
  auto* sensitivity = app.add_subcommand("sensitivity", "Noise sensitivity experiment, CSV output");
  auto* online = app.add_subcommand("online", "Online learning experiment, CSV output");
  auto* verify = app.add_subcommand("verify", "Run the property suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "lemmas, dual, props or all")->check(CLI::IsMember({"lemmas", "dual", "props", "all"}));
  auto* plot = app.add_subcommand("plot", "Render an experiment CSV as an SVG chart");
  std::string csv_in;
  std::string title;
  plot->add_option("csv", csv_in, "Experiment CSV")->required();
  plot->add_option("--title", title, "Chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (generate->parsed()) {
      const EnvKind env = env_kind_from_string(o.env);
      GeneratorConfig gen = GeneratorConfig::defaults_for(env, distribution_from_string(o.dist), o.n, o.m);
      const Instance instance = generate_instance(gen, o.seed);
      if (o.out.empty()) {
        write_instance(std::cout, instance);
      } else {
        save_instance(o.out, instance);
      }
      return 0;
    }
    if (sensitivity->parsed() || online->parsed()) {
      const auto kind = sensitivity->parsed() ? ExperimentKind::sensitivity : ExperimentKind::online;
      emit_csv(run_experiment(to_config(o, kind)), o.out);
      return 0;
    }
    if (verify->parsed()) {
      bool ok = true;
      for (const auto& result : run_suite(suite, o.seed)) {
        std::cout << describe(result) << std::endl;
        ok = ok && result.passed;
      }
      return ok ? 0 : kVerifyFailure;
    }
    if (plot->parsed()) {
      const auto records = load_csv(csv_in);
      if (o.out.empty()) {
        std::cout << render_svg(records, title);
      } else {
        save_svg(o.out, records, title);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return kUsageError;
}
