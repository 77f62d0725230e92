#include "predsched/kernels.hpp"

namespace predsched::kernels {

namespace {

inline double contribution_of(std::ptrdiff_t b, std::span<const int> order, std::span<const int> rank,
                              std::span<const double> w, std::span<const double> p) {
  const int j = order[static_cast<std::size_t>(b)];
  const int rank_j = rank[static_cast<std::size_t>(j)];
  const double wj = w[static_cast<std::size_t>(j)];
  const double pj = p[static_cast<std::size_t>(j)];
  double sum = 0.0;
  for (std::ptrdiff_t a = 0; a < b; ++a) {
    const int k = order[static_cast<std::size_t>(a)];
    if (rank[static_cast<std::size_t>(k)] > rank_j) {
      sum += w[static_cast<std::size_t>(k)] * pj - wj * p[static_cast<std::size_t>(k)];
    }
  }
  return sum;
}

}  // namespace

void inversion_contributions_serial(std::span<const int> true_order, std::span<const int> predicted_rank,
                                    std::span<const double> weights, std::span<const double> lengths,
                                    std::span<double> per_job) {
  const auto n = static_cast<std::ptrdiff_t>(true_order.size());
  for (std::ptrdiff_t b = 0; b < n; ++b) {
    per_job[static_cast<std::size_t>(true_order[static_cast<std::size_t>(b)])] =
        contribution_of(b, true_order, predicted_rank, weights, lengths);
  }
}

void inversion_contributions_parallel(std::span<const int> true_order, std::span<const int> predicted_rank,
                                      std::span<const double> weights, std::span<const double> lengths,
                                      std::span<double> per_job) {
  const auto n = static_cast<std::ptrdiff_t>(true_order.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t b = 0; b < n; ++b) {
    per_job[static_cast<std::size_t>(true_order[static_cast<std::size_t>(b)])] =
        contribution_of(b, true_order, predicted_rank, weights, lengths);
  }
}

}  // namespace predsched::kernels
