#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "predsched/simulator.hpp"

namespace predsched {

// Parsed policy name: one of rr, wrr, wdeq, pf, wspt, pwspt, minincrease,
// or pts(A,B[,lambda]). A pts spec without lambda takes one from the
// experiment's lambda list.
struct PolicySpec {
  std::string kind;
  double lambda = kNoCompletion;  // NaN when unset
  std::vector<PolicySpec> parts;  // A and B for pts

  bool is_pts() const { return kind == "pts"; }
  bool has_lambda() const { return lambda == lambda; }
  bool uses_prediction() const;
  // Name with lambda (e.g. "pts(wspt,rr,0.1)").
  std::string canonical() const;
  // Name without the top-level lambda (e.g. "pts(wspt,rr)").
  std::string family() const;
};

PolicySpec parse_policy(std::string_view text);

// Splits on top-level commas, ignoring commas inside parentheses.
std::vector<std::string> split_top_level(std::string_view text);

// Parses each name; pts specs lacking lambda are replicated per lambda.
std::vector<PolicySpec> expand_policies(const std::vector<std::string>& names, const std::vector<double>& lambdas);

struct PredictionInputs {
  const PermutationPrediction* order = nullptr;       // single order for wspt / pwspt
  const PermutationPrediction* assignment = nullptr;  // assigned prediction for minincrease
};

std::unique_ptr<RatePolicy> make_policy(const PolicySpec& spec, const Instance& instance,
                                        const PredictionInputs& predictions = {});

}  // namespace predsched
