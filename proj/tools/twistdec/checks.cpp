#include "twistdec/checks.hpp"

#include <cmath>
#include <stdexcept>

namespace twistdec::app {

void Checks::add(const std::string& name, const Verdict& v) {
  bool expected = true;
  if (const auto it = expect_.find(name); it != expect_.end() && it->second.is_boolean()) expected = it->second.get<bool>();
  add(name, v, expected);
}

void Checks::add(const std::string& name, const Verdict& v, bool expected) {
  // a NaN residual means something upstream broke, not that the property failed
  if (std::isnan(v.residual)) throw std::logic_error(name + ": residual is NaN");
  Json j = to_json(v);
  j["expected"] = expected;
  residuals_[name] = j;
  if (v.holds != expected) failed_.push_back(name);
}

void Checks::observe(const std::string& name, const Verdict& v) {
  if (const auto it = expect_.find(name); it != expect_.end() && it->second.is_boolean()) {
    add(name, v, it->second.get<bool>());
    return;
  }
  residuals_[name] = to_json(v);
}

void Checks::label(const std::string& name, const std::string& value) {
  Json j{{"value", value}};
  if (const auto it = expect_.find(name); it != expect_.end() && it->second.is_string()) {
    j["expected"] = it->second;
    if (it->second.get<std::string>() != value) failed_.push_back(name);
  }
  residuals_[name] = j;
}

void Checks::undecided(const std::string& name, const std::string& why) {
  residuals_[name] = Json{{"undecided", why}};
  undecided_.push_back(name);
}

void Checks::failed(const std::string& name, const std::string& why) {
  residuals_[name] = Json{{"error", why}};
  failed_.push_back(name);
}

int Checks::exit_code() const {
  if (!failed_.empty()) return kPropertyFailed;
  if (!undecided_.empty()) return kUndecidable;
  return kOk;
}

Json Checks::residuals() const { return residuals_; }

Json Checks::outcome() const {
  const int code = exit_code();
  return Json{{"status", code == kOk ? "ok" : code == kPropertyFailed ? "failed" : "undecidable"},
              {"exit_code", code},
              {"failed", failed_},
              {"undecided", undecided_}};
}

}  // namespace twistdec::app
