#include "predsched/pts.hpp"

#include <algorithm>
#include <cmath>

#include "predsched/instance_io.hpp"

namespace predsched {

namespace {

bool visible(double release, double virtual_time) {
  return virtual_time >= release - 1e-12 * std::max(1.0, release);
}

}  // namespace

PreferentialTimeSharing::PreferentialTimeSharing(std::unique_ptr<RatePolicy> clairvoyant,
                                                 std::unique_ptr<RatePolicy> robust, double lambda)
    : a_(std::move(clairvoyant)), b_(std::move(robust)), lambda_(lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error("pts: lambda must lie in (0, 1), got " + format_double(lambda));
  if (!a_ || !b_) throw Error("pts: both constituent policies are required");
}

void PreferentialTimeSharing::reset(const Instance& instance) {
  a_->reset(instance);
  b_->reset(instance);
}

std::string PreferentialTimeSharing::name() const {
  return "pts(" + a_->name() + "," + b_->name() + "," + format_double(lambda_) + ")";
}

RateDecision PreferentialTimeSharing::decide(const PolicyState& state) {
  const Instance& instance = *state.instance;
  const double share_a = 1.0 - lambda_;
  const double share_b = lambda_;
  const double time_a = share_a * state.time;
  const double time_b = share_b * state.time;

  RateDecision out;
  visible_a_.clear();
  visible_b_.clear();
  for (int j : state.alive) {
    const double r = instance.jobs[static_cast<std::size_t>(j)].release;
    if (visible(r, time_a)) {
      visible_a_.push_back(j);
    } else {
      out.next_epoch = std::min(out.next_epoch, r / share_a);
    }
    if (visible(r, time_b)) {
      visible_b_.push_back(j);
    } else {
      out.next_epoch = std::min(out.next_epoch, r / share_b);
    }
  }

  const auto run = [&](RatePolicy& policy, const std::vector<int>& seen, double clock, double share) {
    if (seen.empty()) return;
    const RateDecision d = policy.decide(PolicyState{clock, &instance, seen, state.remaining});
    for (const RateEntry& e : d.rates) out.rates.push_back(RateEntry{e.machine, e.job, share * e.rate});
    if (d.next_epoch < kNever) out.next_epoch = std::min(out.next_epoch, d.next_epoch / share);
  };
  run(*a_, visible_a_, time_a, share_a);
  run(*b_, visible_b_, time_b, share_b);

  std::sort(out.rates.begin(), out.rates.end(), [](const RateEntry& x, const RateEntry& y) {
    return x.machine != y.machine ? x.machine < y.machine : x.job < y.job;
  });
  std::size_t kept = 0;
  for (std::size_t c = 0; c < out.rates.size(); ++c) {
    if (kept > 0 && out.rates[kept - 1].machine == out.rates[c].machine && out.rates[kept - 1].job == out.rates[c].job) {
      out.rates[kept - 1].rate += out.rates[c].rate;
    } else {
      out.rates[kept++] = out.rates[c];
    }
  }
  out.rates.resize(kept);
  return out;
}

Schedule pts_combine(const Instance& instance, PtsConfig config, const SimulationOptions& options) {
  PreferentialTimeSharing policy(std::move(config));
  return simulate(instance, policy, options);
}

}  // namespace predsched
