#pragma once

#include <span>

namespace predsched {

// Selects the serial reference path or the OpenMP path of a kernel.
enum class Execution { serial, parallel };

}  // namespace predsched

namespace predsched::kernels {

// For every job j, sums w_{j'} p_j - w_j p_{j'} over the jobs j' that come
// before j in `true_order` but after it in the prediction (`predicted_rank`).
// `per_job` is indexed by job and overwritten. Both variants produce
// bit-identical output; the parallel one splits the outer loop over jobs.
void inversion_contributions_serial(std::span<const int> true_order, std::span<const int> predicted_rank,
                                    std::span<const double> weights, std::span<const double> lengths,
                                    std::span<double> per_job);
void inversion_contributions_parallel(std::span<const int> true_order, std::span<const int> predicted_rank,
                                      std::span<const double> weights, std::span<const double> lengths,
                                      std::span<double> per_job);

}  // namespace predsched::kernels
