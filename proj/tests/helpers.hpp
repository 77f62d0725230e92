#pragma once

#include <vector>

#include "predsched/model.hpp"
#include "predsched/simulator.hpp"

namespace testing {

inline predsched::Instance single(std::vector<double> w, std::vector<double> p, std::vector<double> r = {}) {
  predsched::Instance inst;
  inst.jobs = predsched::make_jobs(w, p, r);
  inst.env = predsched::MachineEnvironment::single();
  return inst;
}

inline predsched::Instance identical(int m, std::vector<double> w, std::vector<double> p, std::vector<double> r = {}) {
  predsched::Instance inst;
  inst.jobs = predsched::make_jobs(w, p, r);
  inst.env = predsched::MachineEnvironment::identical(m);
  return inst;
}

// `rates` is machine-major, one row of n entries per machine.
inline predsched::Instance unrelated(int m, std::vector<double> rates, std::vector<double> w, std::vector<double> p,
                                     std::vector<double> r = {}) {
  predsched::Instance inst;
  inst.jobs = predsched::make_jobs(w, p, r);
  inst.env = predsched::MachineEnvironment::unrelated(m, std::move(rates));
  return inst;
}

// 1-based ids, as written in hand examples.
inline predsched::PermutationPrediction order(std::vector<int> ids) {
  for (int& j : ids) --j;
  return predsched::PermutationPrediction::single_order(std::move(ids));
}

inline predsched::SimulationOptions quiet() {
  predsched::SimulationOptions options;
  options.record_segments = false;
  return options;
}

}  // namespace testing
