#pragma once

// Independent reference computations for the tests. They share no code with
// the library beyond the data types.

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

inline double sequence_cost(const std::vector<int>& order, const std::vector<double>& w, const std::vector<double>& p) {
  double t = 0.0, total = 0.0;
  for (int j : order) {
    t += p[static_cast<std::size_t>(j)];
    total += w[static_cast<std::size_t>(j)] * t;
  }
  return total;
}

// Minimum of sum w_j C_j over all n! single-machine sequences.
inline double brute_force_opt(const std::vector<double>& w, const std::vector<double>& p) {
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, sequence_cost(order, w, p));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// SPT optimum for unit weights.
inline double spt(std::vector<double> p) {
  std::sort(p.begin(), p.end());
  double total = 0.0;
  const auto n = p.size();
  for (std::size_t k = 0; k < n; ++k) total += static_cast<double>(n - k) * p[k];
  return total;
}

// Round robin on one machine, unit weights, no releases: the k-th smallest
// job finishes at sum_{i<k} p_(i) + (n-k) p_(k).
inline std::vector<double> round_robin_completions(const std::vector<double>& p) {
  std::vector<int> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return p[static_cast<std::size_t>(a)] < p[static_cast<std::size_t>(b)]; });
  std::vector<double> c(p.size());
  double done = 0.0;
  const auto n = p.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double pk = p[static_cast<std::size_t>(idx[k])];
    c[static_cast<std::size_t>(idx[k])] = done + static_cast<double>(n - k) * pk;
    done += pk;
  }
  return c;
}

// j' precedes j in the true order: higher density by cross-multiplication,
// ties by index.
inline bool truly_before(std::size_t a, std::size_t b, const std::vector<double>& w, const std::vector<double>& p) {
  const double lhs = w[a] * p[b], rhs = w[b] * p[a];
  return lhs != rhs ? lhs > rhs : a < b;
}

// Weighted inversion error by the pairwise definition; `order` lists job
// indices from highest to lowest predicted priority.
inline double eta_s(const std::vector<double>& w, const std::vector<double>& p, const std::vector<int>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[static_cast<std::size_t>(order[k])] = k;
  double total = 0.0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    for (std::size_t b = 0; b < w.size(); ++b) {
      if (a != b && truly_before(a, b, w, p) && pos[a] > pos[b]) total += w[a] * p[b] - w[b] * p[a];
    }
  }
  return total;
}

// Mean eta_s of an order over samples given as length vectors with shared
// weights.
inline double mean_eta_s(const std::vector<double>& w, const std::vector<std::vector<double>>& samples,
                         const std::vector<int>& order) {
  double total = 0.0;
  for (const auto& p : samples) total += eta_s(w, p, order);
  return total / static_cast<double>(samples.size());
}

// Minimum mean eta_s over all orders.
inline double brute_force_min_error(const std::vector<double>& w, const std::vector<std::vector<double>>& samples) {
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, mean_eta_s(w, samples, order));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace oracle
