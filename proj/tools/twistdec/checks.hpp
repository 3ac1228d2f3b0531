#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistdec/report_json.hpp"

namespace twistdec::app {

enum ExitCode : int { kOk = 0, kPropertyFailed = 1, kUndecidable = 2, kUsage = 3, kInternal = 4 };

// Named verdicts of one run. A verdict passes when `holds` equals its
// expectation (true unless the spec's "expect" map says otherwise).
class Checks {
 public:
  explicit Checks(std::map<std::string, Json> expect = {}) : expect_(std::move(expect)) {}

  void add(const std::string& name, const Verdict& v);
  // Fixed expectation that the spec cannot override (suite batteries).
  void add(const std::string& name, const Verdict& v, bool expected);
  // Recorded; only checked when the spec expects a value for it.
  void observe(const std::string& name, const Verdict& v);
  // Descriptive label, compared only when the spec expects a value for it.
  void label(const std::string& name, const std::string& value);
  void undecided(const std::string& name, const std::string& why);
  // Failure found outside a verdict (a hypothesis error, say).
  void failed(const std::string& name, const std::string& why);

  int exit_code() const;
  Json residuals() const;
  Json outcome() const;

 private:
  std::map<std::string, Json> expect_;
  Json residuals_ = Json::object();
  std::vector<std::string> failed_;
  std::vector<std::string> undecided_;
};

}  // namespace twistdec::app
