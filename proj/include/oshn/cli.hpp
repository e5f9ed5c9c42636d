#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oshn/closed_form.hpp"
#include "oshn/model.hpp"

namespace oshn {

// A validated batch run: model, tasks, mode, output target.
struct RunConfig {
  ModelSpec model;
  std::string model_desc;  // echo of how the model was specified
  std::vector<TaskSpec> tasks;
  std::string mode = "compute";  // compute | oracle | compare | table
  std::vector<std::vector<int>> table_mu;  // table mode; empty -> all |mu| <= table_max_weight
  int table_max_weight = 0;
  int table_g_max = 0;
  std::string out_path;       // empty -> stdout
  std::string format = "json";
  int threads = 1;
};

struct TaskResult {
  TaskSpec task;
  // monomial -> rational string, graded-lexicographic order
  std::vector<std::pair<std::string, std::string>> coefficients;
  std::string verdict;  // compare mode only
  bool ok = true;
};

struct TableRow {
  int g = 0;
  std::vector<int> mu;
  std::string value;
};

struct Report {
  std::string mode;
  std::string model_desc;
  std::vector<TaskResult> tasks;
  std::vector<TableRow> rows;
  std::vector<std::string> warnings;
  bool all_ok = true;
};

// Parses and validates a config file; throws std::runtime_error with
// line/field diagnostics on malformed input.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text, const std::string& origin);

// Coefficient table of a computed series (graded lex over z-exponents).
std::vector<std::pair<std::string, std::string>> coefficient_table(const LaurentSeries& h, int n);

Report run(const RunConfig& config);

void emit(const Report& report, std::ostream& os, const std::string& format);

// Full command-line entry point; returns the process exit code (nonzero on
// any compare mismatch or error).
int run_cli(int argc, const char* const* argv);

}  // namespace oshn
