#include "twistdec/report_json.hpp"

namespace twistdec {

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CMatrix& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Verdict& v) {
  Json j{{"holds", v.holds}, {"residual", v.residual}, {"tol", v.tol}};
  if (!v.witness.empty()) j["witness"] = v.witness;
  return j;
}

Json to_json(const Subspace& s) {
  Json j{{"dim", s.dim()}, {"ambient", s.ambient()}};
  if (s.ambient() * s.dim() <= kMaxBasisEntries) {
    // basis vectors as rows, easier to read than the column layout
    j["basis"] = to_json(CMatrix(s.basis().transpose()));
  } else {
    j["basis_omitted"] = true;
  }
  return j;
}

Json to_json(const Species& s) {
  return Json{{"isometry", to_json(s.isometry)},
              {"coisometry", to_json(s.coisometry)},
              {"unitary", to_json(s.unitary)},
              {"partial_isometry", to_json(s.partial_isometry)},
              {"contraction", to_json(s.contraction)}};
}

Json to_json(const PowerPartialIsometry& p) {
  return Json{{"verdict", to_json(p.verdict)}, {"first_failing", p.first_failing}, {"residuals", p.residuals}};
}

namespace {

Json relation_json(const RelationResidual& r, const Space& sp) {
  Json j{{"max_residual", r.max_residual}};
  if (r.first_violation) j["first_violation"] = sp.label_string(*r.first_violation);
  if (r.argmax) j["argmax"] = sp.label_string(*r.argmax);
  return j;
}

}  // namespace

Json to_json(const PairReport& p, const Space& sp) {
  return Json{{"twisted", to_json(p.twisted)},
              {"doubly_twisted", to_json(p.doubly_twisted)},
              {"t1_commutes_U", to_json(p.t1_commutes_U)},
              {"t2_commutes_U", to_json(p.t2_commutes_U)},
              {"twist_relation", relation_json(p.twist_relation, sp)},
              {"adjoint_relation", relation_json(p.adjoint_relation, sp)},
              {"t1_u", relation_json(p.t1_u, sp)},
              {"t2_u", relation_json(p.t2_u, sp)}};
}

Json to_json(const ClassDiagnosis& d) {
  Json ev = Json::array();
  for (const ProbeEvidence& e : d.evidence)
    ev.push_back(Json{{"probe", e.probe}, {"forward", e.forward}, {"backward", e.backward}, {"fast_path", e.fast_path}});
  return Json{{"class", d.label()},
              {"forward", forward_class(d.forward)},
              {"backward", backward_class(d.backward)},
              {"depth", d.depth},
              {"probes", d.probes},
              {"evidence", ev}};
}

Json to_json(const CanonicalDecomposition& d) {
  Json j{{"H_u", to_json(d.H_u)},     {"H_cnu", to_json(d.H_cnu)},
         {"m_star", d.m_star},        {"dims", d.dims},
         {"reducing", to_json(d.reducing)}, {"unitary_part", to_json(d.unitary_part)}};
  if (d.part_u.size() > 0 || d.part_cnu.size() > 0) {
    j["part_u"] = to_json(d.part_u);
    j["part_cnu"] = to_json(d.part_cnu);
  }
  return j;
}

Json to_json(const WoldDecomposition& d) {
  return Json{{"H_u", to_json(d.H_u)},
              {"H_s", to_json(d.H_s)},
              {"W", to_json(d.W)},
              {"multiplicity", d.multiplicity},
              {"depth", d.depth},
              {"drift", d.drift},
              {"converged", to_json(d.converged)},
              {"wandering_orthogonality", d.wandering_orthogonality}};
}

Json to_json(const HalmosWallenDecomposition& d) {
  Json trunc = Json::object(), idx = Json::object();
  for (const auto& [k, s] : d.truncated) trunc[std::to_string(k)] = to_json(s);
  for (const auto& [k, m] : d.index_multiset) idx[std::to_string(k)] = m;
  return Json{{"H_u", to_json(d.H_u)}, {"H_s", to_json(d.H_s)}, {"H_b", to_json(d.H_b)},
              {"H_t", to_json(d.H_t)}, {"truncated", trunc},      {"index_multiset", idx},
              {"depth", d.depth},      {"orthogonality", d.orthogonality},
              {"completeness", d.completeness}};
}

Json to_json(const GridDecomposition& d) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < d.blocks.size(); ++i) {
    const GridBlock& b = d.blocks[i];
    Json jb{{"tag", b.tag},
            {"space", to_json(b.space)},
            {"species", Json::array({b.species1, b.species2})},
            {"reduces", to_json(b.reduces)}};
    if (i < d.formula_blocks.size()) jb["formula_space"] = to_json(d.formula_blocks[i]);
    blocks.push_back(std::move(jb));
  }
  Json j{{"kind", d.kind}, {"blocks", blocks}, {"orthogonality", d.orthogonality}, {"completeness", d.completeness}};
  if (d.formula_agreement) j["formula_agreement"] = *d.formula_agreement;
  return j;
}

Json to_json(const ReductionReport& r, const Space& sp) {
  Json parts = Json::array();
  for (const PartReduction& p : r.parts) {
    Json w = Json::array();
    for (const ReductionWitness& x : p.witnesses)
      w.push_back(Json{{"label", sp.label_string(x.label)}, {"adjoint", x.adjoint}, {"leak", x.leak}, {"image", x.image}});
    parts.push_back(Json{{"part", p.part},
                         {"invariant", to_json(p.invariant)},
                         {"adjoint_invariant", to_json(p.adjoint_invariant)},
                         {"reducing", to_json(p.reducing)},
                         {"witnesses", w}});
  }
  return Json{{"parts", parts}, {"all", to_json(r.all)}};
}

Json to_json(const DilationSpace& d) {
  return Json{{"depth", d.depth},
              {"base_dim", d.base_dim()},
              {"defect_dim", d.defect_dim()},
              {"dim", d.dim()},
              {"identity_residuals", d.identity_residuals},
              {"exactness", to_json(d.exactness)},
              {"minimal", to_json(d.minimal)},
              {"isometric_below_top", to_json(d.isometric_below_top)}};
}

Json to_json(const TwistedExtension& e) {
  Json j{{"dilation", to_json(e.dilation)},
         {"route", e.route == ExtensionRoute::block_formula ? "block_formula" : "spanning_set"},
         {"hypotheses",
          Json{{"adjoint_relation", e.hyp_adjoint_relation},
               {"t_commutes_u", e.hyp_t_commutes},
               {"v_commutes_u", e.hyp_v_commutes}}},
         {"twist_relation", to_json(e.twist_relation)},
         {"adjoint_relation", to_json(e.adjoint_relation)},
         {"isometry", to_json(e.isometry)},
         {"u_unitary", to_json(e.u_unitary)},
         {"restriction_exact", e.restriction_exact},
         {"span_condition", e.span_condition},
         {"guard_level", std::max(0, e.dilation.depth - 2)}};
  if (e.route_agreement) j["route_agreement"] = *e.route_agreement;
  else j["route_agreement"] = nullptr;
  return j;
}

Json to_json(const Intertwiner& i) {
  Json j{{"unitary", to_json(i.unitary)}, {"intertwines_S", to_json(i.intertwines_S)}, {"gram_mismatch", i.gram_mismatch}};
  if (i.intertwines_V) j["intertwines_V"] = to_json(*i.intertwines_V);
  return j;
}

Json to_json(const UpgradeCheck& u) {
  return Json{{"doubly_twisted", to_json(u.doubly_twisted)},
              {"direct_sq", u.direct_sq},
              {"algebraic_sq", u.algebraic_sq},
              {"route_gap", u.route_gap}};
}

Json to_json(const DilationWoldReport& r) {
  return Json{{"extension", to_json(r.extension)},
              {"wold", to_json(r.wold)},
              {"unitary_part_reduces_S", to_json(r.unitary_part_reduces_S)},
              {"shift_part_reduces_S", to_json(r.shift_part_reduces_S)}};
}

Json to_json(const WanderingJoin& w) {
  return Json{{"W", to_json(w.W)},
              {"W1", to_json(w.W1)},
              {"W2", to_json(w.W2)},
              {"V1W2", to_json(w.V1W2)},
              {"V2W1", to_json(w.V2W1)},
              {"join1_residual", w.join1_residual},
              {"join2_residual", w.join2_residual},
              {"u_hat_unitarity", w.u_hat_unitarity},
              {"adjoint_image_1", w.adjoint_image_1},
              {"adjoint_image_2", w.adjoint_image_2},
              {"joins", to_json(w.joins)},
              {"u_hat_unitary", to_json(w.u_hat_unitary)},
              {"adjoint_images", to_json(w.adjoint_images)}};
}

Json to_json(const PowerIdentities& p) {
  Json checks = Json::array();
  for (const IdentityCheck& c : p.checks) checks.push_back(Json{{"name", c.name}, {"n", c.n}, {"residual", c.residual}});
  return Json{{"checks", checks}, {"all", to_json(p.all)}};
}

Json to_json(const JointReducing& j) {
  return Json{{"product", to_json(j.product)},
              {"first", to_json(j.first)},
              {"second", to_json(j.second)},
              {"parts_reduce", to_json(j.parts_reduce)},
              {"unitary_containment", to_json(j.unitary_containment)},
              {"shift_containment", to_json(j.shift_containment)}};
}

Json to_json(const CriterionReport& c) {
  return Json{{"doubly_twisted", to_json(c.doubly_twisted)},
              {"v1_keeps_w2", to_json(c.v1_keeps_w2)},
              {"v2_keeps_w1", to_json(c.v2_keeps_w1)},
              {"agree", c.agree}};
}

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(ErrorCode::SchemaError, "expected a number or [re, im]");
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) fail(ErrorCode::SchemaError, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      fail(ErrorCode::SchemaError, "row " + std::to_string(i) + " has the wrong length");
    for (Eigen::Index k = 0; k < cols; ++k) M(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return M;
}

}  // namespace twistdec
