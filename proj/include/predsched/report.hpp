#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "predsched/experiments.hpp"

namespace predsched {

inline constexpr const char* kCsvHeader =
    "experiment,distribution,n,m,algorithm,lambda,x,run,seed,objective,baseline,ratio,eta_s,ell1";

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::string format_csv(const std::vector<ExperimentRecord>& records);
void save_csv(const std::string& path, const std::vector<ExperimentRecord>& records);

std::vector<ExperimentRecord> read_csv(std::istream& in);
std::vector<ExperimentRecord> load_csv(const std::string& path);

// Mean ratio against x per algorithm (and lambda), with 95% CI bands.
std::string render_svg(const std::vector<ExperimentRecord>& records, const std::string& title = "");
void save_svg(const std::string& path, const std::vector<ExperimentRecord>& records, const std::string& title = "");

}  // namespace predsched
