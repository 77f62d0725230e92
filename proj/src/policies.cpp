#include "predsched/policies.hpp"

#include <algorithm>
#include <numeric>

#include "predsched/pf_solver.hpp"

namespace predsched {

std::vector<double> water_fill(std::span<const double> weights, double capacity) {
  const std::size_t k = weights.size();
  std::vector<double> rates(k, 0.0);
  std::vector<char> capped(k, 0);
  double left = capacity;
  double free_weight = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::size_t free_jobs = k;
  // Each pass caps at least one job or settles the allocation, so there are
  // at most min(k, capacity) + 1 passes.
  while (free_jobs > 0 && left > 0.0) {
    std::size_t newly_capped = 0;
    double capped_weight = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (!capped[c] && left * weights[c] >= free_weight) {
        capped[c] = 1;
        rates[c] = 1.0;
        capped_weight += weights[c];
        ++newly_capped;
      }
    }
    if (newly_capped == 0) {
      for (std::size_t c = 0; c < k; ++c) {
        if (!capped[c]) rates[c] = left * weights[c] / free_weight;
      }
      break;
    }
    left -= static_cast<double>(newly_capped);
    free_weight -= capped_weight;
    free_jobs -= newly_capped;
  }
  return rates;
}

std::vector<double> wdeq_rates(const PolicyState& state, int machines) {
  std::vector<double> w(state.alive.size());
  for (std::size_t c = 0; c < w.size(); ++c) {
    w[c] = state.instance->jobs[static_cast<std::size_t>(state.alive[c])].weight;
  }
  return water_fill(w, static_cast<double>(machines));
}

std::vector<double> wrr_rates(const PolicyState& state) { return wdeq_rates(state, 1); }

std::vector<RateEntry> pf_rates(const PolicyState& state) {
  const Instance& instance = *state.instance;
  if (instance.env.kind() != EnvKind::unrelated) {
    const auto rates = wdeq_rates(state, instance.machines());
    return wrap_around(state.alive, rates, instance.machines());
  }
  const int m = instance.machines();
  const std::size_t k = state.alive.size();
  std::vector<double> w(k);
  std::vector<double> lengths(static_cast<std::size_t>(m) * k);
  for (std::size_t c = 0; c < k; ++c) {
    const int j = state.alive[c];
    w[c] = instance.jobs[static_cast<std::size_t>(j)].weight;
    for (int i = 0; i < m; ++i) lengths[static_cast<std::size_t>(i) * k + c] = instance.env.rate(i, j);
  }
  const PfSolution solution = solve_proportional_fairness(w, lengths, m);
  std::vector<RateEntry> out;
  for (int i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      const double x = solution.x[static_cast<std::size_t>(i) * k + c];
      if (x > 0.0) out.push_back(RateEntry{i, state.alive[c], x});
    }
  }
  return out;
}

RateDecision EquipartitionPolicy::decide(const PolicyState& state) {
  const Instance& instance = *state.instance;
  if (instance.env.kind() == EnvKind::unrelated) throw Error(name() + " needs single or identical machines");
  const int m = instance.machines();
  std::vector<double> rates;
  if (weighted_) {
    rates = wdeq_rates(state, m);
  } else {
    const std::vector<double> unit(state.alive.size(), 1.0);
    rates = water_fill(unit, static_cast<double>(m));
  }
  return RateDecision{wrap_around(state.alive, rates, m), kNever};
}

RateDecision ProportionalFairnessPolicy::decide(const PolicyState& state) {
  return RateDecision{pf_rates(state), kNever};
}

void PriorityPolicy::reset(const Instance& instance) {
  if (prediction_.job_count() != instance.size()) throw Error(label_ + ": prediction does not cover every job");
  if (prediction_.is_single()) {
    if (instance.env.kind() == EnvKind::unrelated && instance.machines() > 1) {
      throw Error(label_ + ": unrelated machines need a prediction with a machine assignment");
    }
  } else if (prediction_.machine_count() != instance.machines()) {
    throw Error(label_ + ": prediction assigns jobs to " + std::to_string(prediction_.machine_count()) +
                " machines, environment has " + std::to_string(instance.machines()));
  }
}

RateDecision PriorityPolicy::decide(const PolicyState& state) {
  RateDecision out;
  const int m = state.instance->machines();
  if (prediction_.is_single()) {
    scratch_.assign(state.alive.begin(), state.alive.end());
    const auto by_rank = [this](int a, int b) { return prediction_.rank(a) < prediction_.rank(b); };
    const auto top = std::min<std::size_t>(static_cast<std::size_t>(m), scratch_.size());
    std::partial_sort(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(top), scratch_.end(), by_rank);
    for (std::size_t k = 0; k < top; ++k) out.rates.push_back(RateEntry{static_cast<int>(k), scratch_[k], 1.0});
    return out;
  }
  scratch_.assign(static_cast<std::size_t>(m), -1);
  for (int j : state.alive) {
    int& best = scratch_[static_cast<std::size_t>(prediction_.machine_of(j))];
    if (best == -1 || prediction_.rank(j) < prediction_.rank(best)) best = j;
  }
  for (int i = 0; i < m; ++i) {
    if (scratch_[static_cast<std::size_t>(i)] != -1) {
      out.rates.push_back(RateEntry{i, scratch_[static_cast<std::size_t>(i)], 1.0});
    }
  }
  return out;
}

}  // namespace predsched
