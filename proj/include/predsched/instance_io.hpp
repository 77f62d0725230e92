#pragma once

#include <iosfwd>
#include <string>

#include "predsched/model.hpp"

namespace predsched {

// Plain-text instance format:
//
//   n m env
//   id weight processing release      (n lines)
//   l_i1 ... l_in                     (m lines, unrelated only)
//
// Numbers are written in shortest round-trip form, so reading a written
// instance reproduces every value bit for bit.
void write_instance(std::ostream& out, const Instance& instance);
std::string format_instance(const Instance& instance);
Instance read_instance(std::istream& in);
Instance parse_instance(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& instance);

// One line per (segment, machine, job) as `t_start t_end machine job rate`
// with 1-based machine and job numbers, sorted lexicographically, then one
// `C job time` line per job.
std::string dump_schedule(const Schedule& schedule);

// Whitespace-separated 1-based ids; assigned predictions write one
// `machine <i>: ...` line per machine.
std::string format_prediction(const PermutationPrediction& prediction);
PermutationPrediction parse_prediction(const std::string& text, std::size_t jobs);

// Shortest decimal that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& token);

}  // namespace predsched
