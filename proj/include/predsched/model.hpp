#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace predsched {

// Thrown for any violated precondition on instances, predictions or
// policy output.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Absolute tolerance used for time and quantity comparisons.
inline constexpr double kTolerance = 1e-9;

struct Job {
  int id = 0;  // 1-based, equals position + 1 inside an Instance
  double weight = 1.0;
  double processing = 1.0;
  double release = 0.0;
};

enum class EnvKind { single, identical, unrelated };

const char* to_string(EnvKind kind);
EnvKind env_kind_from_string(const std::string& name);

// Machine environment. For the unrelated variant the rate matrix is stored
// row-major (machine-major): rate(i, j) = rates[i * n + j], and the
// processing time of job j on machine i is rate(i, j) * p_j.
class MachineEnvironment {
 public:
  MachineEnvironment() = default;

  static MachineEnvironment single();
  static MachineEnvironment identical(int machines);
  static MachineEnvironment unrelated(int machines, std::vector<double> rates);

  EnvKind kind() const { return kind_; }
  int machines() const { return machines_; }

  // Jobs covered by the rate matrix (0 for single/identical).
  std::size_t rate_columns() const;

  double rate(int machine, int job) const {
    return kind_ == EnvKind::unrelated ? rates_[static_cast<std::size_t>(machine) * columns_ + job] : 1.0;
  }
  const std::vector<double>& rates() const { return rates_; }

 private:
  EnvKind kind_ = EnvKind::single;
  int machines_ = 1;
  std::size_t columns_ = 0;
  std::vector<double> rates_;
};

struct Instance {
  std::vector<Job> jobs;
  MachineEnvironment env;

  std::size_t size() const { return jobs.size(); }
  int machines() const { return env.machines(); }
  double processing_time(int machine, int job) const {
    return env.rate(machine, job) * jobs[static_cast<std::size_t>(job)].processing;
  }
  bool has_releases() const;

  std::vector<double> weights() const;
  std::vector<double> lengths() const;

  // Copy with processing requirements replaced.
  Instance with_lengths(std::span<const double> lengths) const;
};

// Builds jobs with ids 1..n from parallel vectors (releases may be empty).
std::vector<Job> make_jobs(std::span<const double> weights, std::span<const double> lengths,
                           std::span<const double> releases = {});

struct Validation {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

Validation validate_instance(const Instance& instance);
// Throws Error with the violation message when the instance is invalid.
void require_valid(const Instance& instance);

// A priority prediction. Either one total order over all jobs, or one order
// per machine that together partition the job set. Job indices are 0-based.
class PermutationPrediction {
 public:
  PermutationPrediction() = default;

  static PermutationPrediction single_order(std::vector<int> order);
  static PermutationPrediction assigned(std::vector<std::vector<int>> machine_orders,
                                        std::size_t jobs);

  bool is_single() const { return single_; }
  std::size_t job_count() const { return machine_of_.size(); }
  int machine_count() const { return static_cast<int>(orders_.size()); }

  // Valid only for single orders.
  const std::vector<int>& order() const;
  const std::vector<std::vector<int>>& machine_orders() const { return orders_; }

  // Machine of a job (always 0 for single orders).
  int machine_of(int job) const { return machine_of_[static_cast<std::size_t>(job)]; }
  // Position of a job within its machine's order (0 is highest priority).
  int rank(int job) const { return rank_[static_cast<std::size_t>(job)]; }

  bool operator==(const PermutationPrediction& other) const {
    return single_ == other.single_ && orders_ == other.orders_;
  }

 private:
  bool single_ = true;
  std::vector<std::vector<int>> orders_;
  std::vector<int> machine_of_;
  std::vector<int> rank_;
};

struct LengthPrediction {
  std::vector<double> y;
};

struct RateEntry {
  int machine = 0;
  int job = 0;
  double rate = 0.0;
};

struct Segment {
  double start = 0.0;
  double end = 0.0;
  std::vector<RateEntry> rates;
};

struct Schedule {
  std::vector<Segment> segments;
  // Completion time per job; NaN when the job never completed.
  std::vector<double> completions;
};

inline constexpr double kNoCompletion = std::numeric_limits<double>::quiet_NaN();

// Jobs sorted by non-increasing weight / length, ties by ascending index.
std::vector<int> wspt_order(std::span<const double> weights, std::span<const double> lengths);

// Sum of w_j C_j; throws when a completion is missing.
double objective(const Schedule& schedule, std::span<const Job> jobs);
double objective(std::span<const double> completions, std::span<const Job> jobs);

// Objective of running the jobs back to back in the given order on one
// machine with all releases at zero.
double sequence_objective(std::span<const int> order, std::span<const double> weights,
                          std::span<const double> lengths);

// Smith's rule optimum for one machine without release dates.
double smith_objective(std::span<const double> weights, std::span<const double> lengths);

}  // namespace predsched
