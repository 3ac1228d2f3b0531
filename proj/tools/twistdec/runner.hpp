#pragma once

#include <cstdint>
#include <string>

#include "twistdec/checks.hpp"
#include "twistdec/spec_file.hpp"

namespace twistdec::app {

struct RunSpec {
  std::string command;     // classify, decompose, pair, dilate, wandering, suite
  std::string kind;        // decompose: canonical, wold, halmos-wallen, grid, mixed-grid, canonical-grid
  std::string spec_path;
  Tolerance tol;
  int depth = 0;           // 0 picks a default per command
  int n_max = 64;
  std::uint64_t seed = 7;
  std::string grid_mode = "doubly-twisted";  // or c00
  std::string out;
  std::string format = "json";

  void validate() const;
};

struct RunResult {
  int exit_code = kOk;
  Json report;
};

// Runs a command and never throws: library errors become exit codes and an
// "error" section in the report.
RunResult run(const RunSpec& spec);

// Report minus the fields excluded from reproducibility comparison.
Json comparable(Json report);
std::string render_text(const Json& report);

// Helpers shared with the suite.
void run_on(const RunSpec& spec, const SpecDocument& doc, Checks& checks, Json& report);

}  // namespace twistdec::app
