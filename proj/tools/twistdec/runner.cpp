#include "twistdec/runner.hpp"

#include <chrono>
#include <ctime>
#include <stdexcept>

#include "twistdec/dilation.hpp"
#include "twistdec/rng.hpp"
#include "twistdec/suite.hpp"
#include "twistdec/wandering.hpp"

namespace twistdec::app {

namespace {

// Cross-route agreement of subspaces computed two different ways.
constexpr double kRouteTol = 1e-8;

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json config_echo(const RunSpec& s, const Json& doc) {
  Json j{{"command", s.command},
         {"rank_tol", s.tol.rank_tol},
         {"residual_tol", s.tol.residual_tol},
         {"depth", s.depth},
         {"n_max", s.n_max},
         {"seed", s.seed},
         {"format", s.format},
         {"version", "0.1.0"}};
  if (!s.kind.empty()) j["kind"] = s.kind;
  if (s.command == "decompose" && s.kind == "canonical-grid") j["grid_mode"] = s.grid_mode;
  if (!s.spec_path.empty()) j["spec_path"] = s.spec_path;
  if (!doc.is_null()) j["spec"] = doc;
  return j;
}

const Operator& need_op(const SpecDocument& d, std::size_t i, const std::string& what) {
  if (d.set.ops.size() <= i) fail(ErrorCode::SchemaError, "$: " + what + " needs at least " + std::to_string(i + 1) + " operators");
  return d.set.ops[i];
}

Operator twist_of(const SpecDocument& d) {
  if (d.set.twist) return *d.set.twist;
  return Operator::identity(need_op(d, 0, "pair").space());
}

std::string op_key(const SpecDocument& d, std::size_t i) {
  return d.set.ops.size() == 1 ? std::string() : "T" + std::to_string(i + 1) + ".";
}

void add_species(const std::string& key, const Species& s, Checks& c) {
  c.observe(key + "isometry", s.isometry);
  c.observe(key + "coisometry", s.coisometry);
  c.observe(key + "unitary", s.unitary);
  c.observe(key + "partial_isometry", s.partial_isometry);
  c.observe(key + "contraction", s.contraction);
}

void add_reduction(const std::string& key, const ReductionReport& r, Checks& c) { c.add(key, r.all); }

void cmd_classify(const RunSpec& s, const SpecDocument& d, Checks& c, Json& rep) {
  Json species_j = Json::object(), classes_j = Json::object();
  for (std::size_t i = 0; i < d.set.ops.size(); ++i) {
    const Operator& A = d.set.ops[i];
    const std::string key = op_key(d, i);
    const std::string name = key.empty() ? A.name() : key.substr(0, key.size() - 1);
    const Species sp = species(A, s.tol);
    Json sj = to_json(sp);
    add_species(key, sp, c);
    const PowerPartialIsometry ppi = is_power_partial_isometry(A, std::min(s.n_max, 8), s.tol);
    sj["power_partial_isometry"] = to_json(ppi);
    c.observe(key + "power_partial_isometry", ppi.verdict);
    species_j[name] = sj;
    ClassOptions opt;
    opt.n_max = s.n_max;
    opt.seed = s.seed;
    try {
      const ClassDiagnosis cd = class_diagnosis(A, opt);
      classes_j[name] = to_json(cd);
      c.label(key + "class", cd.label());
      if (cd.forward == Decision::undecided || cd.backward == Decision::undecided)
        c.undecided(key + "class_decided", cd.label() + " within n_max = " + std::to_string(opt.n_max));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowExceeded) throw;
      classes_j[name] = Json{{"error", e.what()}};
      c.undecided(key + "class_decided", e.what());
    }
  }
  rep["species"] = species_j;
  rep["classes"] = classes_j;
}

void cmd_decompose(const RunSpec& s, const SpecDocument& d, Checks& c, Json& rep) {
  const Tolerance& tol = s.tol;
  const std::string& k = s.kind;
  Json dec;
  if (k == "canonical") {
    const Operator& T = need_op(d, 0, k);
    const CanonicalDecomposition cd = canonical(T, tol);
    dec = to_json(cd);
    c.add("reducing", cd.reducing);
    c.add("unitary_part", cd.unitary_part);
    const ReductionReport rr = reduction_check(T, parts_of(cd), tol);
    dec["reduction"] = to_json(rr, T.space());
    add_reduction("parts_reduce", rr, c);
    const CanonicalDecomposition again = canonical_within(T, cd.H_cnu, tol);
    c.add("cnu_part_has_no_unitary_part", Verdict::from(static_cast<double>(again.H_u.dim()), 0.0));
  } else if (k == "wold") {
    const Operator& V = need_op(d, 0, k);
    const WoldDecomposition w = wold(V, s.depth, tol);
    dec = to_json(w);
    c.add("converged", w.converged);
    c.add("wandering_orthogonality", Verdict::from(w.wandering_orthogonality, tol.residual_tol));
    const ReductionReport rr = reduction_check(V, parts_of(w), tol);
    dec["reduction"] = to_json(rr, V.space());
    add_reduction("parts_reduce", rr, c);
  } else if (k == "halmos-wallen") {
    const Operator& R = need_op(d, 0, k);
    const HalmosWallenDecomposition h = halmos_wallen(R, s.depth, tol);
    dec = to_json(h);
    c.add("orthogonality", Verdict::from(h.orthogonality, tol.residual_tol));
    c.add("completeness", Verdict::from(h.completeness, tol.residual_tol));
    const ReductionReport rr = reduction_check(R, parts_of(h), tol);
    dec["reduction"] = to_json(rr, R.space());
    add_reduction("parts_reduce", rr, c);
  } else if (k == "grid" || k == "mixed-grid" || k == "canonical-grid") {
    const Operator &A = need_op(d, 0, k), &B = need_op(d, 1, k);
    const Operator U = twist_of(d);
    GridDecomposition g;
    if (k == "grid") {
      g = slocinski_grid(A, B, U, s.depth, tol);
    } else if (k == "mixed-grid") {
      g = mixed_grid(A, B, U, s.depth, tol);
    } else {
      CanonicalGridOptions opt;
      if (s.grid_mode == "c00") opt.mode = GridMode::c00_twisted;
      opt.classes.n_max = s.n_max;
      opt.classes.seed = s.seed;
      g = canonical_grid(A, B, U, opt, tol);
      if (g.formula_agreement) c.add("formula_agreement", Verdict::from(*g.formula_agreement, kRouteTol));
    }
    dec = to_json(g);
    for (const GridBlock& b : g.blocks) c.add("block_" + b.tag + "_reduces", b.reduces);
    c.add("orthogonality", Verdict::from(g.orthogonality, tol.residual_tol));
    c.add("completeness", Verdict::from(g.completeness, tol.residual_tol));
  } else {
    fail(ErrorCode::BadParameter, "unknown decomposition kind '" + k + "'");
  }
  rep["decomposition"] = dec;
}

void cmd_pair(const RunSpec& s, const SpecDocument& d, Checks& c, Json& rep) {
  const Operator &T1 = need_op(d, 0, "pair"), &T2 = need_op(d, 1, "pair");
  const Operator U = twist_of(d);
  const PairReport p = pair_relations(T1, T2, U, s.tol);
  rep["pair"] = to_json(p, T1.space());
  c.add("twisted", p.twisted);
  c.add("doubly_twisted", p.doubly_twisted);
  Json species_j = Json::object();
  for (std::size_t i = 0; i < 2; ++i) {
    const Species sp = species(d.set.ops[i], s.tol);
    species_j["T" + std::to_string(i + 1)] = to_json(sp);
    add_species("T" + std::to_string(i + 1) + ".", sp, c);
  }
  rep["species"] = species_j;
}

void add_dilation(const DilationSpace& dl, Checks& c) {
  c.add("dilation_exactness", dl.exactness);
  c.add("dilation_minimal", dl.minimal);
  c.add("dilation_isometric_below_top", dl.isometric_below_top);
}

void add_intertwiner(const Intertwiner& I, Checks& c) {
  c.add("intertwiner_unitary", I.unitary);
  c.add("intertwiner_S", I.intertwines_S);
  if (I.intertwines_V) c.add("intertwiner_V", *I.intertwines_V);
}

void cmd_dilate(const RunSpec& s, const SpecDocument& d, Checks& c, Json& rep) {
  const int depth = s.depth > 0 ? s.depth : 6;
  const Operator& T = need_op(d, 0, "dilate");
  Rng rng(s.seed);
  Json dj;
  if (d.set.ops.size() >= 2) {
    const Operator& V = d.set.ops[1];
    const Operator U = twist_of(d);
    const TwistedExtension e = twisted_extension(T, V, U, depth, s.tol);
    dj["extension"] = to_json(e);
    add_dilation(e.dilation, c);
    c.add("twist_relation", e.twist_relation);
    c.add("adjoint_relation", e.adjoint_relation);
    c.add("extension_isometry", e.isometry);
    c.add("extension_twist_unitary", e.u_unitary);
    c.add("restriction_exact", Verdict::from(e.restriction_exact ? 0.0 : 1.0, 0.0));
    DilationOptions other;
    other.defect_rotation = rng.unitary(e.dilation.defect_dim());
    const TwistedExtension e2 = twisted_extension(T, V, U, depth, s.tol, ExtensionRoute::block_formula, other);
    const Intertwiner I = dilation_intertwiner(e, e2, s.tol);
    dj["intertwiner"] = to_json(I);
    add_intertwiner(I, c);
    if (is_isometry(V, s.tol).holds) {
      const DilationWoldReport w = dilation_wold_reduction(T, V, U, depth, s.tol);
      dj["wold_reduction"] = Json{{"wold", to_json(w.wold)},
                                  {"unitary_part_reduces_S", to_json(w.unitary_part_reduces_S)},
                                  {"shift_part_reduces_S", to_json(w.shift_part_reduces_S)}};
      c.add("wold_unitary_part_reduces_S", w.unitary_part_reduces_S);
      c.add("wold_shift_part_reduces_S", w.shift_part_reduces_S);
    }
  } else {
    const DilationSpace d1 = minimal_isometric_dilation(T, depth, s.tol);
    dj["dilation"] = to_json(d1);
    add_dilation(d1, c);
    DilationOptions other;
    other.defect_rotation = rng.unitary(d1.defect_dim());
    const DilationSpace d2 = minimal_isometric_dilation(T, depth, s.tol, other);
    const Intertwiner I = dilation_intertwiner(d1, d2, s.tol);
    dj["intertwiner"] = to_json(I);
    add_intertwiner(I, c);
  }
  dj["depth"] = depth;
  rep["dilation"] = dj;
}

void cmd_wandering(const RunSpec& s, const SpecDocument& d, Checks& c, Json& rep) {
  const Operator &V1 = need_op(d, 0, "wandering"), &V2 = need_op(d, 1, "wandering");
  const Operator U = twist_of(d);
  const int n_max = s.depth > 0 ? s.depth : 6;
  Json wj;
  const PowerIdentities pi = twist_power_identities(V1, V2, U, n_max, s.tol);
  wj["power_identities"] = to_json(pi);
  c.add("power_identities", pi.all);
  const WanderingJoin join = wandering_join(V1, V2, U, s.tol);
  wj["join"] = to_json(join);
  c.add("wandering_joins", join.joins);
  c.add("u_hat_unitary", join.u_hat_unitary);
  c.add("adjoint_images", join.adjoint_images);
  const CriterionReport cr = doubly_twisted_criterion(V1, V2, U, s.tol);
  wj["criterion"] = to_json(cr);
  c.observe("doubly_twisted", cr.doubly_twisted);
  c.observe("v1_keeps_w2", cr.v1_keeps_w2);
  c.observe("v2_keeps_w1", cr.v2_keeps_w1);
  c.add("criterion_agreement", Verdict::from(cr.agree ? 0.0 : 1.0, 0.0));
  if (cr.doubly_twisted.holds) {
    const JointReducing jr = joint_reducing_check(V1, V2, U, 0, s.tol);
    wj["joint_reducing"] = Json{{"parts_reduce", to_json(jr.parts_reduce)},
                                {"unitary_containment", to_json(jr.unitary_containment)},
                                {"shift_containment", to_json(jr.shift_containment)},
                                {"product_multiplicity", jr.product.multiplicity}};
    c.add("joint_parts_reduce", jr.parts_reduce);
    c.add("joint_unitary_containment", jr.unitary_containment);
    c.add("joint_shift_containment", jr.shift_containment);
  }
  rep["wandering"] = wj;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SchemaError:
    case ErrorCode::BadParameter:
    case ErrorCode::DomainMismatch:
    case ErrorCode::AmbientMismatch:
      return kUsage;
    case ErrorCode::NonConvergent:
    case ErrorCode::WindowExceeded:
    case ErrorCode::StabilizationFailure:
      return kUndecidable;
    default:
      return kPropertyFailed;
  }
}

}  // namespace

void RunSpec::validate() const {
  tol.validate();
  if (n_max < 1) fail(ErrorCode::BadParameter, "--n-max must be positive");
  if (depth < 0) fail(ErrorCode::BadParameter, "--depth must be non-negative");
  if (format != "json" && format != "text") fail(ErrorCode::BadParameter, "--format must be json or text");
  if (grid_mode != "doubly-twisted" && grid_mode != "c00") fail(ErrorCode::BadParameter, "--grid-mode must be doubly-twisted or c00");
}

void run_on(const RunSpec& s, const SpecDocument& d, Checks& c, Json& rep) {
  if (s.command == "classify") cmd_classify(s, d, c, rep);
  else if (s.command == "decompose") cmd_decompose(s, d, c, rep);
  else if (s.command == "pair") cmd_pair(s, d, c, rep);
  else if (s.command == "dilate") cmd_dilate(s, d, c, rep);
  else if (s.command == "wandering") cmd_wandering(s, d, c, rep);
  else fail(ErrorCode::BadParameter, "unknown command '" + s.command + "'");
}

RunResult run(const RunSpec& s) {
  RunResult r;
  Json& rep = r.report;
  rep = Json::object();
  Json doc;
  Checks checks;
  try {
    s.validate();
    if (s.command == "suite") {
      Json suite = Json::object();
      run_suite(s.seed, s.tol, checks, suite);
      rep["suite"] = suite;
    } else {
      const SpecDocument d = parse_spec_file(s.spec_path);
      doc = d.raw;
      checks = Checks(d.expect);
      run_on(s, d, checks, rep);
    }
    r.exit_code = checks.exit_code();
  } catch (const Error& e) {
    r.exit_code = exit_for(e.code());
    rep["error"] = Json{{"code", to_string(e.code())}, {"message", e.what()}};
    if (r.exit_code == kPropertyFailed) checks.failed(to_string(e.code()), e.what());
    else if (r.exit_code == kUndecidable) checks.undecided(to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    r.exit_code = kInternal;
    rep["error"] = Json{{"code", "internal"}, {"message", e.what()}};
  }
  rep["config"] = config_echo(s, doc);
  rep["residuals"] = checks.residuals();
  Json outcome = checks.outcome();
  outcome["exit_code"] = r.exit_code;
  if (r.exit_code == kUsage) outcome["status"] = "usage";
  if (r.exit_code == kInternal) outcome["status"] = "internal";
  rep["outcome"] = outcome;
  rep["timestamp"] = timestamp();
  return r;
}

Json comparable(Json report) {
  report.erase("timestamp");
  return report;
}

}  // namespace twistdec::app
