#include "predsched/pf_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace predsched {

namespace {

// mu runs 1e-1 down to 1e-7. The complementarity products equal mu at the
// centre, and the Newton system's conditioning grows like 1 / mu^2, so
// going further buys nothing but rounding trouble on degenerate inputs.
constexpr int kBarrierStages = 6;
// Inactive entries settle near mu / reduced cost; drop them.
constexpr double kNegligibleRate = 1e-6;

struct Slacks {
  std::vector<double> q;  // throughput per job
  std::vector<double> g;  // 1 - machine load
  std::vector<double> h;  // 1 - job load
};

// Returns false when x is outside the open feasible region.
bool compute_slacks(const std::vector<double>& x, const std::vector<double>& inv_len, int m, int k, Slacks& s) {
  s.q.assign(static_cast<std::size_t>(k), 0.0);
  s.g.assign(static_cast<std::size_t>(m), 1.0);
  s.h.assign(static_cast<std::size_t>(k), 1.0);
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < k; ++c) {
      const auto idx = static_cast<std::size_t>(i * k + c);
      if (!(x[idx] > 0.0)) return false;
      s.q[static_cast<std::size_t>(c)] += x[idx] * inv_len[idx];
      s.g[static_cast<std::size_t>(i)] -= x[idx];
      s.h[static_cast<std::size_t>(c)] -= x[idx];
    }
  }
  return std::all_of(s.g.begin(), s.g.end(), [](double v) { return v > 0.0; }) &&
         std::all_of(s.h.begin(), s.h.end(), [](double v) { return v > 0.0; });
}

double barrier_value(const std::vector<double>& x, const std::vector<double>& w, const Slacks& s, double mu) {
  double f = 0.0;
  for (std::size_t c = 0; c < w.size(); ++c) f += w[c] * std::log(s.q[c]) + mu * std::log(s.h[c]);
  for (double gi : s.g) f += mu * std::log(gi);
  for (double xi : x) f += mu * std::log(xi);
  return f;
}

}  // namespace

PfSolution solve_proportional_fairness(std::span<const double> weights, std::span<const double> lengths, int machines,
                                       const PfOptions& options) {
  const int k = static_cast<int>(weights.size());
  const int m = machines;
  if (m < 1) throw Error("proportional fairness needs at least one machine");
  if (lengths.size() != static_cast<std::size_t>(m) * weights.size()) {
    throw Error("rate matrix does not match machines x jobs");
  }
  PfSolution out;
  if (k == 0) return out;

  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(weight_sum > 0.0)) throw Error("proportional fairness needs positive weights");
  std::vector<double> w(weights.begin(), weights.end());
  for (double& v : w) v /= weight_sum;
  std::vector<double> inv_len(lengths.size());
  for (std::size_t idx = 0; idx < lengths.size(); ++idx) inv_len[idx] = 1.0 / lengths[idx];

  const auto mk = static_cast<std::size_t>(m * k);
  std::vector<double> x(mk, 0.5 / std::max(m, k));
  std::vector<double> grad(mk), step(mk), trial(mk);
  Slacks s, st;
  compute_slacks(x, inv_len, m, k, s);

  double mu = 0.1;
  int iterations = 0;

  std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(k), Eigen::MatrixXd(m, m));
  std::vector<Eigen::LDLT<Eigen::MatrixXd>> block_ldlt(static_cast<std::size_t>(k));
  std::vector<Eigen::MatrixXd> block_inv(static_cast<std::size_t>(k), Eigen::MatrixXd(m, m));
  std::vector<double> machine_curvature(static_cast<std::size_t>(m));
  std::vector<double> residual_rhs(mk), correction_step(mk);
  Eigen::LDLT<Eigen::MatrixXd> coupling_ldlt;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(m, m);

  // Negative Hessian H = blockdiag_c(B_c) + V diag(mu / g^2) V^T, where V
  // sums each machine's entries across jobs. solve() applies H^-1 by
  // Woodbury; apply() multiplies by H exactly for refinement.
  const auto solve = [&](const std::vector<double>& r, std::vector<double>& out) {
    Eigen::VectorXd total = Eigen::VectorXd::Zero(m);
    std::vector<Eigen::VectorXd> yc(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
      Eigen::VectorXd rc(m);
      for (int i = 0; i < m; ++i) rc(i) = r[static_cast<std::size_t>(i * k + c)];
      yc[static_cast<std::size_t>(c)] = block_ldlt[static_cast<std::size_t>(c)].solve(rc);
      total += yc[static_cast<std::size_t>(c)];
    }
    const Eigen::VectorXd correction = coupling_ldlt.solve(total);
    for (int c = 0; c < k; ++c) {
      const Eigen::VectorXd dc = yc[static_cast<std::size_t>(c)] - block_inv[static_cast<std::size_t>(c)] * correction;
      for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i * k + c)] = dc(i);
    }
  };
  const auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (int i = 0; i < m; ++i) {
      double load = 0.0;
      for (int c = 0; c < k; ++c) load += v[static_cast<std::size_t>(i * k + c)];
      for (int c = 0; c < k; ++c) out[static_cast<std::size_t>(i * k + c)] = machine_curvature[static_cast<std::size_t>(i)] * load;
    }
    for (int c = 0; c < k; ++c) {
      for (int i = 0; i < m; ++i) {
        double acc = 0.0;
        for (int l = 0; l < m; ++l) acc += blocks[static_cast<std::size_t>(c)](i, l) * v[static_cast<std::size_t>(l * k + c)];
        out[static_cast<std::size_t>(i * k + c)] += acc;
      }
    }
  };

  // Last centred point; restored when the Newton system breaks down.
  std::vector<double> centred_x;
  Slacks centred_s;
  double centred_mu = mu;
  bool broken = false;

  for (int stage = 0;; ++stage) {
    double last_decrement = std::numeric_limits<double>::infinity();
    for (;;) {
      if (++iterations > options.max_iterations) {
        throw SolverError("proportional fairness did not converge within " + std::to_string(options.max_iterations) +
                          " iterations");
      }
      for (int i = 0; i < m; ++i) {
        for (int c = 0; c < k; ++c) {
          const auto idx = static_cast<std::size_t>(i * k + c);
          grad[idx] = w[static_cast<std::size_t>(c)] * inv_len[idx] / s.q[static_cast<std::size_t>(c)] + mu / x[idx] -
                      mu / s.g[static_cast<std::size_t>(i)] - mu / s.h[static_cast<std::size_t>(c)];
        }
      }
      Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(m, m);
      for (int c = 0; c < k; ++c) {
        const auto cu = static_cast<std::size_t>(c);
        const double wq = w[cu] / (s.q[cu] * s.q[cu]);
        const double hc = mu / (s.h[cu] * s.h[cu]);
        Eigen::MatrixXd& block = blocks[cu];
        for (int i = 0; i < m; ++i) {
          const auto ii = static_cast<std::size_t>(i * k + c);
          for (int l = 0; l < m; ++l) {
            const auto li = static_cast<std::size_t>(l * k + c);
            block(i, l) = wq * inv_len[ii] * inv_len[li] + hc;
          }
          block(i, i) += mu / (x[ii] * x[ii]);
        }
        block_ldlt[cu].compute(block);
        block_inv[cu] = block_ldlt[cu].solve(identity);
        coupling += block_inv[cu];
      }
      for (int i = 0; i < m; ++i) {
        const double gi = s.g[static_cast<std::size_t>(i)];
        machine_curvature[static_cast<std::size_t>(i)] = mu / (gi * gi);
        coupling(i, i) += gi * gi / mu;
      }
      coupling_ldlt.compute(coupling);
      solve(grad, step);
      // Woodbury loses digits once barrier terms dominate; refine.
      for (int pass = 0; pass < 3; ++pass) {
        apply(step, residual_rhs);
        for (std::size_t idx = 0; idx < mk; ++idx) residual_rhs[idx] = grad[idx] - residual_rhs[idx];
        solve(residual_rhs, correction_step);
        for (std::size_t idx = 0; idx < mk; ++idx) step[idx] += correction_step[idx];
      }
      double decrement = 0.0;
      for (std::size_t idx = 0; idx < mk; ++idx) decrement += grad[idx] * step[idx];
      // Scale-free Newton decrement of f / mu + barrier.
      // Inside the quadratic region a decrement that stops shrinking has hit
      // the rounding floor.
      if (decrement < -1e-12 * mu) {
        broken = true;
        break;
      }
      if (!(decrement > 1e-12 * mu)) break;
      if (decrement < 1e-6 * mu && decrement >= last_decrement) break;
      last_decrement = decrement;

      // Largest step keeping every slack positive.
      double alpha_max = std::numeric_limits<double>::infinity();
      for (std::size_t idx = 0; idx < mk; ++idx) {
        if (step[idx] < 0.0) alpha_max = std::min(alpha_max, -x[idx] / step[idx]);
      }
      for (int i = 0; i < m; ++i) {
        double load = 0.0;
        for (int c = 0; c < k; ++c) load += step[static_cast<std::size_t>(i * k + c)];
        if (load > 0.0) alpha_max = std::min(alpha_max, s.g[static_cast<std::size_t>(i)] / load);
      }
      for (int c = 0; c < k; ++c) {
        double load = 0.0;
        for (int i = 0; i < m; ++i) load += step[static_cast<std::size_t>(i * k + c)];
        if (load > 0.0) alpha_max = std::min(alpha_max, s.h[static_cast<std::size_t>(c)] / load);
      }
      double alpha = std::min(1.0, 0.99 * alpha_max);
      const double current = barrier_value(x, w, s, mu);
      bool accepted = false;
      while (alpha > 1e-12) {
        for (std::size_t idx = 0; idx < mk; ++idx) trial[idx] = x[idx] + alpha * step[idx];
        if (compute_slacks(trial, inv_len, m, k, st)) {
          // Close to the centre the barrier value is flat up to rounding;
          // accept the damped Newton step there.
          if (decrement < 1e-8 || barrier_value(trial, w, st, mu) >= current + 0.25 * alpha * decrement) {
            accepted = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        broken = decrement > 1e-6 * mu;
        break;
      }
      x.swap(trial);
      std::swap(s, st);
    }
    if (broken) {
      if (centred_x.empty()) throw SolverError("proportional fairness: Newton system broke down");
      x = centred_x;
      s = centred_s;
      mu = centred_mu;
      break;
    }
    centred_x = x;
    centred_s = s;
    centred_mu = mu;
    if (stage == kBarrierStages) break;
    mu *= 0.1;
  }

  // KKT residual with multipliers mu / slack: stationarity is the barrier
  // gradient, complementarity products all equal mu at the centre.
  double residual = mu;
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < k; ++c) {
      const auto idx = static_cast<std::size_t>(i * k + c);
      const double stationarity = w[static_cast<std::size_t>(c)] * inv_len[idx] / s.q[static_cast<std::size_t>(c)] +
                                  mu / x[idx] - mu / s.g[static_cast<std::size_t>(i)] -
                                  mu / s.h[static_cast<std::size_t>(c)];
      residual = std::max(residual, std::abs(stationarity));
    }
  }
  if (residual > options.kkt_tolerance) {
    throw SolverError("proportional fairness stopped with KKT residual " + std::to_string(residual));
  }

  for (double& v : x) {
    if (v < kNegligibleRate) v = 0.0;
  }
  out.x = std::move(x);
  out.throughput.assign(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < k; ++c) {
      const auto idx = static_cast<std::size_t>(i * k + c);
      out.throughput[static_cast<std::size_t>(c)] += out.x[idx] * inv_len[idx];
    }
  }
  out.kkt_residual = residual;
  out.iterations = iterations;
  return out;
}

}  // namespace predsched
