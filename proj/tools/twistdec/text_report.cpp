#include <cstdio>
#include <sstream>

#include "twistdec/runner.hpp"

namespace twistdec::app {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

std::string render_text(const Json& rep) {
  std::ostringstream os;
  const Json& cfg = rep["config"];
  const Json& out = rep["outcome"];
  os << "twistdec " << cfg.value("command", "?");
  if (cfg.contains("kind")) os << " --kind " << cfg["kind"].get<std::string>();
  if (cfg.contains("spec_path")) os << " " << cfg["spec_path"].get<std::string>();
  os << "\nstatus: " << out.value("status", "?") << " (exit " << out.value("exit_code", -1) << ")\n";
  if (rep.contains("error")) os << "error: " << rep["error"].value("message", "") << "\n";
  for (const auto& [name, v] : rep["residuals"].items()) {
    if (v.contains("undecided")) {
      os << "  ????  " << name << "  " << v["undecided"].get<std::string>() << "\n";
    } else if (v.contains("error")) {
      os << "  FAIL  " << name << "  " << v["error"].get<std::string>() << "\n";
    } else if (v.contains("value")) {
      const bool bad = v.contains("expected") && v["expected"] != v["value"];
      os << "  " << (bad ? "FAIL" : "    ") << "  " << name << " = " << v["value"].get<std::string>();
      if (v.contains("expected")) os << " (expected " << v["expected"].get<std::string>() << ")";
      os << "\n";
    } else {
      const bool holds = v["holds"].get<bool>();
      std::string mark = "    ";
      if (v.contains("expected")) mark = holds == v["expected"].get<bool>() ? "ok  " : "FAIL";
      os << "  " << mark << "  " << name << (holds ? " holds" : " fails") << "  residual " << num(v["residual"].get<double>())
         << " tol " << num(v["tol"].get<double>());
      if (v.contains("expected") && !v["expected"].get<bool>()) os << " (expected to fail)";
      if (v.contains("witness")) os << "  [" << v["witness"].get<std::string>() << "]";
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace twistdec::app
