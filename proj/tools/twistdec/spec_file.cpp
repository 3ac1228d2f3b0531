#include "twistdec/spec_file.hpp"

#include <fstream>
#include <sstream>

#include "twistdec/gallery.hpp"

namespace twistdec::app {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& why) { fail(ErrorCode::SchemaError, path + ": " + why); }

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(path + "." + key, "missing");
  return *it;
}

std::string string_field(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = field(j, key, path);
  if (!v.is_string()) schema(path + "." + key, "expected a string");
  return v.get<std::string>();
}

long int_value(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) schema(path, "expected an integer");
  return v.get<long>();
}

cplx complex_value(const Json& v, const std::string& path) {
  try {
    return complex_from_json(v);
  } catch (const Error&) {
    schema(path, "expected a number or [re, im]");
  }
}

std::function<cplx(long)> weight_formula(const Json& w, const std::string& path) {
  const std::string formula = string_field(w, "formula", path);
  if (formula == "const") {
    const cplx c = complex_value(field(w, "c", path), path + ".c");
    return [c](long) { return c; };
  }
  if (formula == "r_pow_n_over_4") {
    const cplx r = complex_value(field(w, "r", path), path + ".r");
    if (std::abs(std::abs(r) - 1.0) > 1e-12) schema(path + ".r", "needs |r| = 1");
    return [r](long n) { return ipow(r, n) / 4.0; };
  }
  schema(path + ".formula", "unknown formula '" + formula + "' (expected const or r_pow_n_over_4)");
}

}  // namespace

Space parse_space(const Json& j, const std::string& path) {
  const std::string kind = string_field(j, "kind", path);
  SpaceKind k;
  try {
    k = space_kind_from(kind);
  } catch (const Error&) {
    schema(path + ".kind", "unknown space kind '" + kind + "'");
  }
  const std::string key = k == SpaceKind::dense ? "dim" : "window";
  const long n = int_value(field(j, key, path), path + "." + key);
  if (n < 1) schema(path + "." + key, "must be positive");
  return Space({{k, n}});
}

OperatorSet parse_operator(const Json& j, const std::optional<Space>& outer, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  std::optional<Space> sp = outer;
  if (j.contains("space")) sp = parse_space(j["space"], path + ".space");
  const std::string kind = string_field(j, "kind", path);
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : kind;
  OperatorSet out;

  if (kind == "matrix") {
    CMatrix M;
    try {
      M = matrix_from_json(field(j, "data", path));
    } catch (const Error& e) {
      schema(path + ".data", e.what());
    }
    if (M.rows() != M.cols()) schema(path + ".data", "matrix must be square");
    if (sp && !(sp->all_dense() && static_cast<Eigen::Index>(sp->size()) == M.rows()))
      schema(path + ".data", "size does not match the space " + sp->describe());
    out.ops.push_back(Operator::dense(M, j.contains("name") ? name : "T"));
  } else if (kind == "weighted_shift") {
    if (!sp) schema(path, "weighted_shift needs a space");
    const Json& w = field(j, "weights", path);
    if (!w.is_object()) schema(path + ".weights", "expected an object");
    const long step = j.contains("step") ? int_value(j["step"], path + ".step") : 1;
    out.ops.push_back(weighted_shift(*sp, weight_formula(w, path + ".weights"), step, j.contains("name") ? name : "S"));
  } else if (kind == "gallery") {
    const std::string gname = string_field(j, "name", path);
    Params params;
    if (j.contains("params")) {
      const Json& p = j["params"];
      if (!p.is_object()) schema(path + ".params", "expected an object");
      for (const auto& [k, v] : p.items()) params[k] = complex_value(v, path + ".params." + k);
    }
    if (sp && !sp->all_dense() && !params.count("window"))
      params["window"] = static_cast<double>(sp->parts().front().extent);
    GalleryItem g;
    try {
      g = gallery(gname, params);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BadParameter) fail(ErrorCode::BadParameter, path + ": " + e.what());
      throw;
    }
    out.ops = g.ops;
    out.twist = g.twist;
  } else if (kind == "direct_sum") {
    const Json& parts = field(j, "parts", path);
    if (!parts.is_array() || parts.empty()) schema(path + ".parts", "expected a non-empty array");
    std::vector<Operator> ops;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const std::string pp = path + ".parts[" + std::to_string(i) + "]";
      OperatorSet s = parse_operator(parts[i], std::nullopt, pp);
      ops.push_back(s.ops.front());
    }
    out.ops.push_back(direct_sum(ops));
  } else if (kind == "scalar_twist") {
    if (!sp) schema(path, "scalar_twist needs a space");
    const cplx r = complex_value(field(j, "r", path), path + ".r");
    if (std::abs(std::abs(r) - 1.0) > 1e-12) schema(path + ".r", "needs |r| = 1");
    out.ops.push_back(scalar_twist(*sp, r));
  } else {
    schema(path + ".kind", "unknown operator kind '" + kind + "'");
  }
  return out;
}

SpecDocument parse_spec(const Json& doc) {
  if (!doc.is_object()) schema("$", "expected an object");
  SpecDocument s;
  s.raw = doc;
  std::optional<Space> sp;
  if (doc.contains("space")) sp = parse_space(doc["space"], "$.space");
  if (doc.contains("operator")) {
    s.set = parse_operator(doc["operator"], sp, "$.operator");
  } else if (doc.contains("operators")) {
    const Json& ops = doc["operators"];
    if (!ops.is_array() || ops.empty()) schema("$.operators", "expected a non-empty array");
    for (std::size_t i = 0; i < ops.size(); ++i)
      s.set.ops.push_back(parse_operator(ops[i], sp, "$.operators[" + std::to_string(i) + "]").ops.front());
  } else {
    schema("$", "needs 'operator' or 'operators'");
  }
  if (doc.contains("twist")) s.set.twist = parse_operator(doc["twist"], sp, "$.twist").ops.front();
  if (doc.contains("expect")) {
    const Json& e = doc["expect"];
    if (!e.is_object()) schema("$.expect", "expected an object");
    for (const auto& [k, v] : e.items()) {
      if (!v.is_boolean() && !v.is_string()) schema("$.expect." + k, "expected a boolean or a string");
      s.expect[k] = v;
    }
  }
  return s;
}

SpecDocument parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::SchemaError, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc;
  try {
    doc = Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::SchemaError, path + ": not valid JSON (" + e.what() + ")");
  }
  return parse_spec(doc);
}

}  // namespace twistdec::app
