#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistdec/operator.hpp"
#include "twistdec/report_json.hpp"

namespace twistdec::app {

// Operators named by a spec document. Single-operator commands use ops[0];
// pair commands use ops[0], ops[1] and the twist.
struct OperatorSet {
  std::vector<Operator> ops;
  std::optional<Operator> twist;
};

struct SpecDocument {
  Json raw;
  OperatorSet set;
  std::map<std::string, Json> expect;  // check name -> expected bool or label
};

// Document layout:
//   {"space": {...}, "operator": {...}}                 one operator
//   {"space": {...}, "operators": [{...}, {...}], "twist": {...}}
//   optional "expect": {"doubly_twisted": false, "class": "C00", ...}
// A gallery operator that yields several operators and a twist fills the
// whole set. Errors are SchemaError with a JSON path such as
// $.operator.weights.formula.
SpecDocument parse_spec(const Json& doc);
SpecDocument parse_spec_file(const std::string& path);

Space parse_space(const Json& j, const std::string& path);
OperatorSet parse_operator(const Json& j, const std::optional<Space>& sp, const std::string& path);

}  // namespace twistdec::app
