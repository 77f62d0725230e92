#include "predsched/policy_factory.hpp"

#include <algorithm>
#include <cctype>

#include "predsched/instance_io.hpp"
#include "predsched/policies.hpp"
#include "predsched/pts.hpp"

namespace predsched {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

const std::vector<std::string>& base_names() {
  static const std::vector<std::string> names{"rr", "wrr", "wdeq", "pf", "wspt", "pwspt", "minincrease"};
  return names;
}

}  // namespace

bool PolicySpec::uses_prediction() const {
  if (is_pts()) return parts[0].uses_prediction() || parts[1].uses_prediction();
  return kind == "wspt" || kind == "pwspt" || kind == "minincrease";
}

std::string PolicySpec::family() const {
  if (!is_pts()) return kind;
  return "pts(" + parts[0].canonical() + "," + parts[1].canonical() + ")";
}

std::string PolicySpec::canonical() const {
  if (!is_pts()) return kind;
  std::string out = "pts(" + parts[0].canonical() + "," + parts[1].canonical();
  if (has_lambda()) out += "," + format_double(lambda);
  return out + ")";
}

std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t c = 0; c <= text.size(); ++c) {
    if (c == text.size() || (text[c] == ',' && depth == 0)) {
      out.push_back(trim(text.substr(start, c - start)));
      start = c + 1;
    } else if (text[c] == '(') {
      ++depth;
    } else if (text[c] == ')') {
      if (--depth < 0) throw Error("unbalanced parentheses in '" + std::string(text) + "'");
    }
  }
  if (depth != 0) throw Error("unbalanced parentheses in '" + std::string(text) + "'");
  return out;
}

PolicySpec parse_policy(std::string_view raw) {
  const std::string text = trim(raw);
  PolicySpec spec;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    if (std::find(base_names().begin(), base_names().end(), text) == base_names().end()) {
      throw Error("unknown policy '" + text + "'");
    }
    spec.kind = text;
    return spec;
  }
  if (trim(text.substr(0, open)) != "pts" || text.back() != ')') throw Error("unknown policy '" + text + "'");
  const auto args = split_top_level(std::string_view(text).substr(open + 1, text.size() - open - 2));
  if (args.size() != 2 && args.size() != 3) throw Error("pts takes (A,B) or (A,B,lambda): '" + text + "'");
  spec.kind = "pts";
  spec.parts.push_back(parse_policy(args[0]));
  spec.parts.push_back(parse_policy(args[1]));
  if (args.size() == 3) {
    spec.lambda = parse_double(args[2]);
    if (!(spec.lambda > 0.0 && spec.lambda < 1.0)) throw Error("pts lambda must lie in (0, 1): '" + text + "'");
  }
  return spec;
}

std::vector<PolicySpec> expand_policies(const std::vector<std::string>& names, const std::vector<double>& lambdas) {
  std::vector<PolicySpec> out;
  for (const auto& name : names) {
    PolicySpec spec = parse_policy(name);
    if (spec.is_pts() && !spec.has_lambda()) {
      if (lambdas.empty()) throw Error("'" + name + "' needs a lambda value");
      for (double lambda : lambdas) {
        if (!(lambda > 0.0 && lambda < 1.0)) throw Error("lambda must lie in (0, 1), got " + format_double(lambda));
        spec.lambda = lambda;
        out.push_back(spec);
      }
    } else {
      out.push_back(std::move(spec));
    }
  }
  return out;
}

std::unique_ptr<RatePolicy> make_policy(const PolicySpec& spec, const Instance& instance,
                                        const PredictionInputs& predictions) {
  const auto need = [&](const PermutationPrediction* p, const char* what) -> const PermutationPrediction& {
    if (p == nullptr) throw Error(spec.kind + " needs " + what);
    return *p;
  };
  if (spec.kind == "rr") return std::make_unique<EquipartitionPolicy>(false);
  if (spec.kind == "wrr" || spec.kind == "wdeq") return std::make_unique<EquipartitionPolicy>(true);
  if (spec.kind == "pf") return std::make_unique<ProportionalFairnessPolicy>();
  if (spec.kind == "wspt") {
    if (instance.machines() != 1) throw Error("wspt needs a single machine; use pwspt");
    return std::make_unique<PriorityPolicy>(need(predictions.order, "a predicted order"), "wspt");
  }
  if (spec.kind == "pwspt") {
    if (instance.env.kind() == EnvKind::unrelated) throw Error("pwspt needs single or identical machines");
    return std::make_unique<PriorityPolicy>(need(predictions.order, "a predicted order"), "pwspt");
  }
  if (spec.kind == "minincrease") {
    return std::make_unique<PriorityPolicy>(need(predictions.assignment, "a predicted assignment"), "minincrease");
  }
  if (spec.is_pts()) {
    if (!spec.has_lambda()) throw Error("pts needs a lambda value");
    return std::make_unique<PreferentialTimeSharing>(make_policy(spec.parts[0], instance, predictions),
                                                     make_policy(spec.parts[1], instance, predictions), spec.lambda);
  }
  throw Error("unknown policy '" + spec.kind + "'");
}

}  // namespace predsched
