#include "predsched/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace predsched {

namespace {

constexpr double kCapacitySlack = 1e-9;

void check_decision(const RateDecision& decision, const Instance& instance, const std::vector<char>& is_alive,
                    std::vector<double>& machine_load, std::vector<double>& job_load, const std::string& policy) {
  const int m = instance.machines();
  std::fill(machine_load.begin(), machine_load.end(), 0.0);
  for (const RateEntry& e : decision.rates) {
    if (e.machine < 0 || e.machine >= m) {
      throw Error(policy + " assigned a rate on unknown machine " + std::to_string(e.machine + 1));
    }
    if (e.job < 0 || static_cast<std::size_t>(e.job) >= instance.size() || !is_alive[static_cast<std::size_t>(e.job)]) {
      throw Error(policy + " assigned a rate to job " + std::to_string(e.job + 1) + " which is not available");
    }
    if (!std::isfinite(e.rate) || e.rate < -kCapacitySlack) {
      throw Error(policy + " returned an invalid rate for job " + std::to_string(e.job + 1));
    }
    machine_load[static_cast<std::size_t>(e.machine)] += e.rate;
    job_load[static_cast<std::size_t>(e.job)] += e.rate;
  }
  for (int i = 0; i < m; ++i) {
    if (machine_load[static_cast<std::size_t>(i)] > 1.0 + kCapacitySlack) {
      throw Error(policy + " overloads machine " + std::to_string(i + 1));
    }
  }
  for (const RateEntry& e : decision.rates) {
    if (job_load[static_cast<std::size_t>(e.job)] > 1.0 + kCapacitySlack) {
      throw Error(policy + " gives job " + std::to_string(e.job + 1) + " a total rate above 1");
    }
  }
  for (const RateEntry& e : decision.rates) job_load[static_cast<std::size_t>(e.job)] = 0.0;
}

}  // namespace

Schedule simulate(const Instance& instance, RatePolicy& policy, const SimulationOptions& options) {
  require_valid(instance);
  const std::size_t n = instance.size();
  const std::string policy_name = policy.name();

  std::vector<int> release_order(n);
  std::iota(release_order.begin(), release_order.end(), 0);
  std::stable_sort(release_order.begin(), release_order.end(), [&](int a, int b) {
    return instance.jobs[static_cast<std::size_t>(a)].release < instance.jobs[static_cast<std::size_t>(b)].release;
  });

  std::vector<double> extra = options.extra_epochs;
  std::sort(extra.begin(), extra.end());

  std::vector<double> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = instance.jobs[j].processing;
  std::vector<char> is_alive(n, 0);
  std::vector<int> alive;
  alive.reserve(n);
  std::vector<double> progress(n, 0.0);
  std::vector<double> machine_load(static_cast<std::size_t>(instance.machines()), 0.0);
  std::vector<double> job_load(n, 0.0);

  Schedule schedule;
  schedule.completions.assign(n, kNoCompletion);

  const std::size_t max_events = options.max_events ? options.max_events : 32 * (n + extra.size()) + 1024;
  std::size_t next_release = 0;
  std::size_t next_extra = 0;
  std::size_t events = 0;
  std::size_t finished = 0;
  int stalled = 0;
  double t = 0.0;

  policy.reset(instance);

  while (finished < n) {
    if (++events > max_events) throw Error(policy_name + ": event limit exceeded");

    bool released_now = false;
    while (next_release < n && instance.jobs[static_cast<std::size_t>(release_order[next_release])].release <= t) {
      const int j = release_order[next_release++];
      alive.insert(std::lower_bound(alive.begin(), alive.end(), j), j);
      is_alive[static_cast<std::size_t>(j)] = 1;
      released_now = true;
    }
    while (next_extra < extra.size() && extra[next_extra] <= t) ++next_extra;

    if (alive.empty()) {
      // Idle until the next release; nothing to decide.
      t = instance.jobs[static_cast<std::size_t>(release_order[next_release])].release;
      continue;
    }

    const PolicyState state{t, &instance, alive, remaining};
    if (options.observer) options.observer(state);
    RateDecision decision = policy.decide(state);
    check_decision(decision, instance, is_alive, machine_load, job_load, policy_name);

    double total_progress = 0.0;
    for (RateEntry& e : decision.rates) {
      e.rate = std::max(e.rate, 0.0);
      const double p = e.rate / instance.env.rate(e.machine, e.job);
      progress[static_cast<std::size_t>(e.job)] += p;
      total_progress += p;
    }

    double until_completion = kNever;
    int first_done = -1;
    for (int j : alive) {
      const double speed = progress[static_cast<std::size_t>(j)];
      if (speed > 0.0) {
        const double d = remaining[static_cast<std::size_t>(j)] / speed;
        if (d < until_completion) {
          until_completion = d;
          first_done = j;
        }
      }
    }
    const double t_release =
        next_release < n ? instance.jobs[static_cast<std::size_t>(release_order[next_release])].release : kNever;
    const double t_epoch = decision.next_epoch > t ? decision.next_epoch : kNever;
    const double t_extra = next_extra < extra.size() ? extra[next_extra] : kNever;
    const double t_completion = t + until_completion;
    double t_next = std::min({t_completion, t_release, t_epoch, t_extra});

    if (total_progress <= 0.0) {
      // A policy may idle while waiting for information (e.g. jobs hidden
      // by time sharing), but not twice in a row without a new release,
      // and never with nothing left to wait for.
      stalled = released_now ? 1 : stalled + 1;
      if (!std::isfinite(t_next) || stalled >= 2) {
        throw Error(policy_name + " makes no progress at time " + std::to_string(t) + " with " +
                    std::to_string(alive.size()) + " unfinished jobs");
      }
    } else {
      stalled = 0;
    }

    const double dt = t_next - t;
    if (options.record_segments && dt > 0.0 && !decision.rates.empty()) {
      Segment seg{t, t_next, {}};
      seg.rates.reserve(decision.rates.size());
      for (const RateEntry& e : decision.rates) {
        if (e.rate > 0.0) seg.rates.push_back(e);
      }
      if (!seg.rates.empty()) schedule.segments.push_back(std::move(seg));
    }

    const bool completion_event = t_next == t_completion;
    bool any_done = false;
    for (int j : alive) {
      const auto ju = static_cast<std::size_t>(j);
      const double speed = progress[ju];
      if (speed <= 0.0) continue;
      progress[ju] = 0.0;
      if (completion_event && j == first_done) {
        remaining[ju] = 0.0;
      } else {
        remaining[ju] -= speed * dt;
      }
      if (remaining[ju] <= kCompletionSlack * instance.jobs[ju].processing) {
        remaining[ju] = 0.0;
        schedule.completions[ju] = t_next;
        is_alive[ju] = 0;
        any_done = true;
        ++finished;
      }
    }
    if (any_done) {
      alive.erase(std::remove_if(alive.begin(), alive.end(), [&](int j) { return !is_alive[static_cast<std::size_t>(j)]; }),
                  alive.end());
    }
    t = t_next;
  }
  return schedule;
}

std::vector<RateEntry> wrap_around(std::span<const int> jobs, std::span<const double> rates, int machines) {
  std::vector<RateEntry> out;
  out.reserve(jobs.size() + static_cast<std::size_t>(machines));
  int machine = 0;
  double room = 1.0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    double rate = rates[k];
    while (rate > 0.0 && machine < machines) {
      const double piece = std::min(rate, room);
      if (piece > 0.0) out.push_back(RateEntry{machine, jobs[k], piece});
      rate -= piece;
      room -= piece;
      if (room <= 1e-15) {
        ++machine;
        room = 1.0;
      }
      if (rate <= 1e-15) break;
    }
  }
  return out;
}

}  // namespace predsched
