#include "predsched/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

namespace predsched {

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("cannot format number");
  return std::string(buf, end);
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw Error("malformed number '" + token + "'");
  return value;
}

namespace {

long parse_integer(const std::string& token) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) throw Error("malformed integer '" + token + "'");
  return value;
}

std::string next_token(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw Error(std::string("instance file truncated: expected ") + what);
  return token;
}

}  // namespace

void write_instance(std::ostream& out, const Instance& instance) {
  const std::size_t n = instance.size();
  const int m = instance.machines();
  out << n << ' ' << m << ' ' << to_string(instance.env.kind()) << '\n';
  for (const Job& job : instance.jobs) {
    out << job.id << ' ' << format_double(job.weight) << ' ' << format_double(job.processing) << ' '
        << format_double(job.release) << '\n';
  }
  if (instance.env.kind() == EnvKind::unrelated) {
    for (int i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j) out << ' ';
        out << format_double(instance.env.rate(i, static_cast<int>(j)));
      }
      out << '\n';
    }
  }
}

std::string format_instance(const Instance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

Instance read_instance(std::istream& in) {
  const long n = parse_integer(next_token(in, "job count"));
  const long m = parse_integer(next_token(in, "machine count"));
  const EnvKind kind = env_kind_from_string(next_token(in, "environment"));
  if (n < 1) throw Error("instance file declares no jobs");
  if (m < 1) throw Error("instance file declares no machines");
  if (kind == EnvKind::single && m != 1) throw Error("single environment must declare m = 1");

  Instance instance;
  instance.jobs.resize(static_cast<std::size_t>(n));
  for (auto& job : instance.jobs) {
    job.id = static_cast<int>(parse_integer(next_token(in, "job id")));
    job.weight = parse_double(next_token(in, "weight"));
    job.processing = parse_double(next_token(in, "processing"));
    job.release = parse_double(next_token(in, "release"));
  }
  switch (kind) {
    case EnvKind::single:
      instance.env = MachineEnvironment::single();
      break;
    case EnvKind::identical:
      instance.env = MachineEnvironment::identical(static_cast<int>(m));
      break;
    case EnvKind::unrelated: {
      std::vector<double> rates(static_cast<std::size_t>(n * m));
      for (double& r : rates) r = parse_double(next_token(in, "rate"));
      instance.env = MachineEnvironment::unrelated(static_cast<int>(m), std::move(rates));
      break;
    }
  }
  std::string extra;
  if (in >> extra) throw Error("unexpected trailing data '" + extra + "' in instance file");
  require_valid(instance);
  return instance;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return read_instance(in);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  return read_instance(in);
}

void save_instance(const std::string& path, const Instance& instance) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file '" + path + "'");
  write_instance(out, instance);
  if (!out) throw Error("failed writing instance file '" + path + "'");
}

std::string dump_schedule(const Schedule& schedule) {
  using Row = std::tuple<double, double, int, int, double>;
  std::vector<Row> rows;
  for (const Segment& seg : schedule.segments) {
    for (const RateEntry& e : seg.rates) {
      if (e.rate > 0.0) rows.emplace_back(seg.start, seg.end, e.machine + 1, e.job + 1, e.rate);
    }
  }
  std::sort(rows.begin(), rows.end());
  std::ostringstream out;
  for (const auto& [start, end, machine, job, rate] : rows) {
    out << format_double(start) << ' ' << format_double(end) << ' ' << machine << ' ' << job << ' '
        << format_double(rate) << '\n';
  }
  for (std::size_t j = 0; j < schedule.completions.size(); ++j) {
    out << "C " << j + 1 << ' ' << format_double(schedule.completions[j]) << '\n';
  }
  return out.str();
}

std::string format_prediction(const PermutationPrediction& prediction) {
  std::ostringstream out;
  auto write_ids = [&out](const std::vector<int>& order) {
    for (std::size_t k = 0; k < order.size(); ++k) out << (k ? " " : "") << order[k] + 1;
  };
  if (prediction.is_single()) {
    write_ids(prediction.order());
    out << '\n';
    return out.str();
  }
  const auto& orders = prediction.machine_orders();
  for (std::size_t i = 0; i < orders.size(); ++i) {
    out << "machine " << i + 1 << ':';
    if (!orders[i].empty()) out << ' ';
    write_ids(orders[i]);
    out << '\n';
  }
  return out.str();
}

PermutationPrediction parse_prediction(const std::string& text, std::size_t jobs) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<int>> orders;
  bool assigned = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::string token;
    row >> token;
    std::vector<int> ids;
    if (token == "machine") {
      assigned = true;
      std::string label;
      row >> label;
      if (label.empty() || label.back() != ':') throw Error("malformed machine label in prediction");
      const long index = parse_integer(label.substr(0, label.size() - 1));
      if (index != static_cast<long>(orders.size()) + 1) throw Error("machine labels must count up from 1");
    } else {
      if (assigned || !orders.empty()) throw Error("single-order prediction must fit on one line");
      ids.push_back(static_cast<int>(parse_integer(token)) - 1);
    }
    while (row >> token) ids.push_back(static_cast<int>(parse_integer(token)) - 1);
    orders.push_back(std::move(ids));
  }
  if (orders.empty()) throw Error("empty prediction");
  if (!assigned) {
    if (orders.front().size() != jobs) throw Error("single-order prediction does not cover every job");
    return PermutationPrediction::single_order(std::move(orders.front()));
  }
  return PermutationPrediction::assigned(std::move(orders), jobs);
}

}  // namespace predsched
