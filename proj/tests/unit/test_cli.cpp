#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "twistdec/checks.hpp"
#include "twistdec/errors.hpp"
#include "twistdec/runner.hpp"
#include "twistdec/spec_file.hpp"

using namespace twistdec;
using namespace twistdec::app;

namespace {

std::string write_spec(const std::string& name, const Json& doc) {
  const auto dir = std::filesystem::temp_directory_path() / "twistdec_unit";
  std::filesystem::create_directories(dir);
  const auto path = dir / (name + ".json");
  std::ofstream(path) << doc.dump(2);
  return path.string();
}

RunSpec command(const std::string& cmd, const std::string& path) {
  RunSpec s;
  s.command = cmd;
  s.spec_path = path;
  return s;
}

Json example_pair(double r_re, double r_im, bool expect_doubly) {
  return Json{{"space", {{"kind", "halfline"}, {"window", 24}}},
              {"operator", {{"kind", "gallery"}, {"name", "hardy_twisted_pair"}, {"params", {{"r", {r_re, r_im}}}}}},
              {"expect", {{"doubly_twisted", expect_doubly}}}};
}

// G diag(1, C) G^T with C a strict contraction and G a rotation in the
// (0,1) plane, so the unitary part is the line through G e0.
Json contraction_spec() {
  const double M[3][3] = {{1.0, 0.0, 0.0}, {0.0, 0.5, 0.25}, {0.0, 0.0, 0.3}};
  const double G[3][3] = {{0.6, -0.8, 0.0}, {0.8, 0.6, 0.0}, {0.0, 0.0, 1.0}};
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) {
      double x = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) x += G[i][k] * M[k][l] * G[j][l];
      row.push_back({x, 0.0});
    }
    rows.push_back(row);
  }
  return Json{{"space", {{"kind", "dense"}, {"dim", 3}}}, {"operator", {{"kind", "matrix"}, {"data", rows}}}};
}

}  // namespace

TEST(SpecFile, DenseIdentity) {
  const Json doc = {{"space", {{"kind", "dense"}, {"dim", 2}}},
                    {"operator", {{"kind", "matrix"}, {"data", {{{1, 0}, {0, 0}}, {{0, 0}, {1, 0}}}}}}};
  const SpecDocument d = parse_spec(doc);
  ASSERT_EQ(d.set.ops.size(), 1u);
  EXPECT_EQ(to_matrix(d.set.ops[0]), CMatrix(CMatrix::Identity(2, 2)));
}

TEST(SpecFile, GalleryPairWithTwist) {
  const Json doc = {{"space", {{"kind", "line"}, {"window", 20}}},
                    {"operator", {{"kind", "gallery"}, {"name", "bilateral_pair"},
                                  {"params", {{"r", {0, 1}}, {"lambda", {0.5, 0}}}}}}};
  const SpecDocument d = parse_spec(doc);
  ASSERT_EQ(d.set.ops.size(), 2u);
  ASSERT_TRUE(d.set.twist.has_value());
  EXPECT_EQ(d.set.ops[0].space().size(), 41u);
  EXPECT_EQ(d.set.twist->scalar_value().value_or(0.0), cplx(0.0, 1.0));
}

TEST(SpecFile, WeightedShiftAndDirectSum) {
  const Json ws = {{"kind", "weighted_shift"}, {"weights", {{"formula", "const"}, {"c", {0.5, 0}}}}, {"step", 1}};
  const Json doc = {{"space", {{"kind", "halfline"}, {"window", 8}}}, {"operator", ws}};
  const SpecDocument d = parse_spec(doc);
  const SparseVec col = d.set.ops[0].apply_basis(Label{0, 2, 0});
  ASSERT_EQ(col.size(), 1u);
  EXPECT_EQ(col.begin()->first.i, 3);
  EXPECT_EQ(col.begin()->second, cplx(0.5));

  Json shift_part = ws;
  shift_part["space"] = {{"kind", "halfline"}, {"window", 4}};
  const Json dense_part = {{"kind", "matrix"}, {"space", {{"kind", "dense"}, {"dim", 1}}}, {"data", {{{0.5, 0}}}}};
  const Json sum = {{"kind", "direct_sum"}, {"parts", {dense_part, shift_part}}};
  const SpecDocument s = parse_spec({{"operator", sum}});
  EXPECT_EQ(s.set.ops[0].space().size(), 5u);
}

TEST(SpecFile, MalformedWeightsNamesTheField) {
  const Json doc = {{"space", {{"kind", "halfline"}, {"window", 8}}},
                    {"operator", {{"kind", "weighted_shift"}, {"weights", {{"formula", "r_pow_n_over_5"}}}}}};
  try {
    parse_spec(doc);
    FAIL() << "no SchemaError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_NE(std::string(e.what()).find("$.operator.weights.formula"), std::string::npos) << e.what();
  }
}

TEST(SpecFile, SchemaErrors) {
  EXPECT_THROW(parse_spec(Json{{"space", {{"kind", "torus"}, {"window", 3}}}, {"operator", {{"kind", "matrix"}}}}), Error);
  EXPECT_THROW(parse_spec(Json{{"space", {{"kind", "dense"}, {"dim", 2}}},
                               {"operator", {{"kind", "matrix"}, {"data", {{{1, 0}}}}}}}),
               Error);
  EXPECT_THROW(parse_spec(Json::array()), Error);
}

TEST(Runner, PairVerifyRecordsExpectedFailure) {
  const RunResult r = run(command("pair", write_spec("hardy_pair", example_pair(0, 1, false))));
  EXPECT_EQ(r.exit_code, kOk) << r.report.dump(2);
  EXPECT_FALSE(r.report["pair"]["doubly_twisted"]["holds"].get<bool>());
  // without the expectation the same spec fails and names the check
  const RunResult plain = run(command("pair", write_spec("hardy_pair_plain", example_pair(0, 1, true))));
  EXPECT_EQ(plain.exit_code, kPropertyFailed);
  const Json& failed = plain.report["outcome"]["failed"];
  EXPECT_NE(std::find(failed.begin(), failed.end(), Json("doubly_twisted")), failed.end()) << failed.dump();
}

TEST(Runner, CanonicalOnContraction) {
  RunSpec s = command("decompose", write_spec("contraction", contraction_spec()));
  s.kind = "canonical";
  const RunResult r = run(s);
  EXPECT_EQ(r.exit_code, kOk) << r.report.dump(2);
  const Json& dec = r.report["decomposition"];
  EXPECT_TRUE(dec.contains("H_u"));
  EXPECT_TRUE(dec.contains("H_cnu"));
  EXPECT_EQ(dec["H_u"]["dim"].get<long>(), 1);
}

TEST(Runner, EveryVerdictCarriesResidualAndTolerance) {
  RunSpec s = command("decompose", write_spec("contraction", contraction_spec()));
  s.kind = "canonical";
  const RunResult r = run(s);
  for (const auto& [name, v] : r.report["residuals"].items()) {
    EXPECT_TRUE(v.contains("residual")) << name;
    EXPECT_TRUE(v.contains("tol")) << name;
  }
}

TEST(Runner, ExitCodes) {
  // usage: missing file, bad tolerance, schema error
  EXPECT_EQ(run(command("classify", "/nonexistent/spec.json")).exit_code, kUsage);
  RunSpec bad = command("classify", write_spec("contraction", contraction_spec()));
  bad.tol.residual_tol = -1.0;
  EXPECT_EQ(run(bad).exit_code, kUsage);
  const Json broken = {{"space", {{"kind", "halfline"}, {"window", 8}}},
                       {"operator", {{"kind", "weighted_shift"}, {"weights", {{"formula", "cubic"}}}}}};
  EXPECT_EQ(run(command("classify", write_spec("broken", broken))).exit_code, kUsage);

  // property failure: pair verify on a non-twisted pair
  const Json untwisted = {{"space", {{"kind", "dense"}, {"dim", 2}}},
                          {"operators", {{{"kind", "matrix"}, {"data", {{{0, 0}, {1, 0}}, {{0, 0}, {0, 0}}}}},
                                         {{"kind", "matrix"}, {"data", {{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}}}}}},
                          {"twist", {{"kind", "scalar_twist"}, {"r", {1, 0}}}}};
  EXPECT_EQ(run(command("pair", write_spec("untwisted", untwisted))).exit_code, kPropertyFailed);

  // undecidable: a slowly decaying weighted shift cannot be classified within n_max
  const Json slow = {{"space", {{"kind", "halfline"}, {"window", 64}}},
                     {"operator", {{"kind", "weighted_shift"}, {"weights", {{"formula", "const"}, {"c", {0.97, 0}}}}, {"step", 1}}}};
  RunSpec undecided = command("classify", write_spec("slow", slow));
  undecided.n_max = 20;
  EXPECT_EQ(run(undecided).exit_code, kUndecidable);
}

TEST(Runner, SameSeedSameReport) {
  RunSpec s = command("dilate", write_spec("contraction", contraction_spec()));
  s.seed = 11;
  const Json a = comparable(run(s).report);
  const Json b = comparable(run(s).report);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_FALSE(a.contains("timestamp"));
}

TEST(Runner, ConfigEcho) {
  RunSpec s = command("classify", write_spec("contraction", contraction_spec()));
  s.n_max = 17;
  const Json rep = run(s).report;
  ASSERT_TRUE(rep.contains("config"));
  EXPECT_NE(rep["config"].dump().find("17"), std::string::npos);
}

TEST(Checks, ExpectationsOverrideDefaults) {
  Checks c({{"x", Json(false)}});
  c.add("x", Verdict::from(1.0, 0.5));
  EXPECT_EQ(c.exit_code(), kOk);
  c.add("y", Verdict::from(1.0, 0.5));
  EXPECT_EQ(c.exit_code(), kPropertyFailed);
  Checks u;
  u.undecided("z", "window too small");
  EXPECT_EQ(u.exit_code(), kUndecidable);
}
