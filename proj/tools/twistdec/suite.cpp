#include "twistdec/suite.hpp"

#include <cmath>
#include <numbers>

#include "twistdec/dilation.hpp"
#include "twistdec/gallery.hpp"
#include "twistdec/synth.hpp"
#include "twistdec/wandering.hpp"

namespace twistdec::app {

namespace {

// Worst value per named quantity, plus a count of discrete mismatches.
class Battery {
 public:
  void worst(const std::string& key, double v) {
    double& w = worst_[key];
    w = std::max(w, v);
  }
  void mismatch(bool bad) { mismatches_ += bad ? 1 : 0; }
  double get(const std::string& key) const {
    const auto it = worst_.find(key);
    return it == worst_.end() ? 0.0 : it->second;
  }
  long mismatches() const { return mismatches_; }
  Json json(int samples) const {
    Json w = Json::object();
    for (const auto& [k, v] : worst_) w[k] = v;
    return Json{{"samples", samples}, {"worst", w}, {"mismatches", mismatches_}};
  }

 private:
  std::map<std::string, double> worst_;
  long mismatches_ = 0;
};

Params rp(std::initializer_list<std::pair<const std::string, cplx>> l) { return Params(l); }

cplx disk_point(Rng& rng, double rmax) {
  const double rho = rmax * std::sqrt(rng.uniform());
  return std::polar(rho, rng.uniform(0.0, 2.0 * std::numbers::pi));
}

void gallery_examples(Rng& rng, Checks& c, Json& rep) {
  Json sec;
  {
    const Operator R = gallery("c4_example", rp({{"a", 0.5}})).ops[0];
    Tolerance t13;
    t13.residual_tol = 1e-13;
    const Verdict r1 = is_partial_isometry(R, t13), r2 = is_partial_isometry(power(R, 2), t13),
                  r3 = is_partial_isometry(power(R, 3), t13);
    c.add("c4.R_partial_isometry", r1, true);
    c.add("c4.R2_partial_isometry", r2, false);
    c.add("c4.R3_partial_isometry", r3, true);
    sec["c4_example"] = Json{{"R", to_json(r1)}, {"R2", to_json(r2)}, {"R3", to_json(r3)}};
  }
  Tolerance t12;
  t12.residual_tol = 1e-12;
  {
    const cplx r = rng.unit_phase();
    const GalleryItem g = gallery("hardy_twisted_pair", rp({{"r", r}, {"window", 64.0}}));
    const PairReport p = pair_relations(g.ops[0], g.ops[1], *g.twist, t12);
    c.add("hardy_twisted_pair.twisted", p.twisted, true);
    c.add("hardy_twisted_pair.doubly_twisted", p.doubly_twisted, false);
    const bool at0 = p.adjoint_relation.first_violation && *p.adjoint_relation.first_violation == Label{};
    c.add("hardy_twisted_pair.violation_at_e0", Verdict::from(at0 ? 0.0 : 1.0, 0.0), true);
    sec["hardy_twisted_pair"] = Json{{"r", to_json(r)}, {"pair", to_json(p, g.ops[0].space())}};
  }
  {
    const cplx r = rng.unit_phase();
    const cplx alpha = disk_point(rng, 1.0);
    const GalleryItem g = gallery("hardy_doubly_twisted_pair", rp({{"r", r}, {"alpha", alpha}}));
    const PairReport p = pair_relations(g.ops[0], g.ops[1], *g.twist, t12);
    c.add("hardy_doubly_twisted_pair.doubly_twisted", p.doubly_twisted, true);
    sec["hardy_doubly_twisted_pair"] = Json{{"r", to_json(r)}, {"alpha", to_json(alpha)}, {"doubly_twisted", to_json(p.doubly_twisted)}};
  }
  {
    const GalleryItem g = gallery("bilateral_pair", rp({{"r", cplx(0.0, 1.0)}, {"lambda", 0.25}, {"window", 80.0}}));
    const PairReport p = pair_relations(g.ops[0], g.ops[1], *g.twist, t12);
    c.add("bilateral_pair.doubly_twisted", p.doubly_twisted, true);
    ClassOptions opt;
    opt.n_max = 20;
    const ClassDiagnosis d1 = class_diagnosis(g.ops[0], opt), d2 = class_diagnosis(g.ops[1], opt);
    c.label("bilateral_pair.T1_class", d1.label());
    c.label("bilateral_pair.T2_class", d2.label());
    c.add("bilateral_pair.both_C00", Verdict::from(d1.c00() && d2.c00() ? 0.0 : 1.0, 0.0), true);
    sec["bilateral_pair"] = Json{{"doubly_twisted", to_json(p.doubly_twisted)}, {"T1", d1.label()}, {"T2", d2.label()}};
  }
  {
    const GalleryItem g = gallery("quarter_plane_pair", rp({{"window", 5.0}}));
    const Operator &T1 = g.ops[0], &T2 = g.ops[1];
    const Space& sp = T2.space();
    const WoldDecomposition w = wold(T2);
    std::vector<Eigen::Index> idx;
    for (std::size_t k = 0; k < sp.size(); ++k)
      if (sp.label(k).i >= 0) idx.push_back(static_cast<Eigen::Index>(k));
    const double dist = projector_distance(w.H_u, Subspace::coordinates(static_cast<Eigen::Index>(sp.size()), idx));
    c.add("quarter_plane.H_u2_coordinates", Verdict::from(dist, 1e-9), true);
    const ReductionReport rr = reduction_check(T1, {{"H_u2", w.H_u}});
    c.add("quarter_plane.H_u2_reduces_T1", rr.all, false);
    const CriterionReport cr = doubly_twisted_criterion(T1, T2, *g.twist);
    c.add("quarter_plane.criterion_agreement", Verdict::from(cr.agree ? 0.0 : 1.0, 0.0), true);
    sec["quarter_plane"] = Json{{"H_u2_distance", dist},
                                {"reduction", to_json(rr.all)},
                                {"criterion", to_json(cr)}};
  }
  {
    Json up = Json::array();
    for (int s = 0; s < 2; ++s) {
      const cplx r = s == 0 ? cplx(1.0) : rng.unit_phase();
      const GalleryItem g = gallery("shift_coshift_pair", rp({{"r", r}, {"window", 6.0}}));
      const UpgradeCheck u = coisometry_upgrade_check(g.ops[0], g.ops[1], *g.twist);
      c.add("shift_coshift_pair.doubly_twisted[" + std::to_string(s) + "]",
            Verdict::from(u.doubly_twisted.residual, 1e-13), true);
      c.add("shift_coshift_pair.route_gap[" + std::to_string(s) + "]", Verdict::from(u.route_gap, 1e-12), true);
      up.push_back(to_json(u));
    }
    sec["shift_coshift_pair"] = up;
  }
  rep["gallery"] = sec;
}

void canonical_battery(Rng& rng, int samples, Checks& c, Json& rep) {
  Battery b;
  for (int s = 0; s < samples; ++s) {
    const synth::ContractionSample x = synth::random_contraction(rng, rng.integer(1, 6));
    const CanonicalDecomposition d = canonical(x.T);
    b.worst("distance", projector_distance(d.H_u, x.H_u));
    b.worst("unitary_part", d.unitary_part.residual);
    b.mismatch(canonical_within(x.T, d.H_cnu).H_u.dim() != 0);
  }
  c.add("canonical.construction_distance", Verdict::from(b.get("distance"), 1e-9), true);
  c.add("canonical.unitary_part", Verdict::from(b.get("unitary_part"), 1e-10), true);
  c.add("canonical.re_extraction", Verdict::from(static_cast<double>(b.mismatches()), 0.0), true);
  rep["canonical"] = b.json(samples);
}

void wold_battery(Rng& rng, int samples, Checks& c, Json& rep) {
  Battery w, h;
  for (int s = 0; s < samples; ++s) {
    const synth::WoldSample x = synth::shifts_plus_unitary(rng);
    const WoldDecomposition d = wold(x.V);
    w.mismatch(d.multiplicity != x.multiplicity);
    w.worst("distance", std::max(projector_distance(d.H_u, x.H_u), projector_distance(d.H_s, x.H_s)));
  }
  for (int s = 0; s < samples; ++s) {
    const synth::TruncatedSample x = synth::unitary_plus_truncated(rng);
    const HalmosWallenDecomposition d = halmos_wallen(x.R);
    h.mismatch(d.index_multiset != x.index_multiset);
    double dist = projector_distance(d.H_u, x.H_u);
    for (const auto& [k, B] : x.blocks) {
      const auto it = d.truncated.find(k);
      dist = std::max(dist, it == d.truncated.end() ? 1.0 : projector_distance(it->second, B));
    }
    h.worst("distance", dist);
  }
  c.add("wold.multiplicity", Verdict::from(static_cast<double>(w.mismatches()), 0.0), true);
  c.add("wold.distance", Verdict::from(w.get("distance"), 1e-9), true);
  c.add("halmos_wallen.index_multiset", Verdict::from(static_cast<double>(h.mismatches()), 0.0), true);
  c.add("halmos_wallen.distance", Verdict::from(h.get("distance"), 1e-9), true);
  rep["wold"] = w.json(samples);
  rep["halmos_wallen"] = h.json(samples);
}

void partner_battery(Rng& rng, int samples, Checks& c, Json& rep) {
  Battery b;
  Tolerance t9;
  t9.residual_tol = 1e-9;
  for (int s = 0; s < samples; ++s) {
    const synth::PartnerSample x = synth::doubly_twisted_partner(rng);
    const CanonicalDecomposition d = canonical(x.T);
    const ReductionReport rr = reduction_check(x.V, parts_of(d), t9);
    b.worst("reduction", rr.all.residual);
    b.mismatch(!rr.all.holds);
  }
  c.add("partner.canonical_parts_reduce", Verdict::from(b.get("reduction"), 1e-9), true);
  rep["partner_reduction"] = b.json(samples);
}

void grid_battery(Rng& rng, int samples, Checks& c, Json& rep) {
  Battery b;
  static const char* species[4][2] = {{"unitary", "unitary"}, {"unitary", "c.n.u."}, {"c.n.u.", "unitary"}, {"c.n.u.", "c.n.u."}};
  for (int s = 0; s < samples; ++s) {
    const synth::FourBlockSample x = synth::four_block_pair(rng);
    CanonicalGridOptions opt;
    opt.mode = x.mode;
    const GridDecomposition g = canonical_grid(x.T1, x.T2, x.U, opt);
    b.worst("formula_agreement", g.formula_agreement.value_or(1.0));
    for (std::size_t k = 0; k < 4; ++k) {
      b.mismatch(g.blocks[k].species1 != species[k][0] || g.blocks[k].species2 != species[k][1]);
      b.worst("block_distance", projector_distance(g.blocks[k].space, x.blocks[k]));
    }
  }
  c.add("canonical_grid.formula_agreement", Verdict::from(b.get("formula_agreement"), 1e-8), true);
  c.add("canonical_grid.block_distance", Verdict::from(b.get("block_distance"), 1e-8), true);
  c.add("canonical_grid.species", Verdict::from(static_cast<double>(b.mismatches()), 0.0), true);
  rep["canonical_grid"] = b.json(samples);
}

void dilation_battery(Rng& rng, int samples, Checks& c, Json& rep) {
  Battery b;
  for (int s = 0; s < samples; ++s) {
    const synth::CyclicSample x = synth::cyclic_sample(rng);
    const TwistedExtension e = twisted_extension(x.T, x.V, x.U, 6);
    for (double r : e.dilation.identity_residuals) b.worst("identity", r);
    b.worst("relations", std::max(e.twist_relation.residual, e.adjoint_relation.residual));
    b.mismatch(!e.restriction_exact);
    DilationOptions other;
    other.defect_rotation = rng.unitary(e.dilation.defect_dim());
    const TwistedExtension e2 = twisted_extension(x.T, x.V, x.U, 6, {}, ExtensionRoute::block_formula, other);
    const Intertwiner I = dilation_intertwiner(e, e2);
    b.worst("intertwiner", std::max(I.intertwines_S.residual, I.intertwines_V ? I.intertwines_V->residual : 0.0));
  }
  c.add("dilation.identity", Verdict::from(b.get("identity"), 1e-12), true);
  c.add("dilation.relations", Verdict::from(b.get("relations"), 1e-10), true);
  c.add("dilation.restriction_exact", Verdict::from(static_cast<double>(b.mismatches()), 0.0), true);
  c.add("dilation.intertwiner", Verdict::from(b.get("intertwiner"), 1e-9), true);
  rep["dilation"] = b.json(samples);
}

void wandering_battery(Rng& rng, Checks& c, Json& rep) {
  Battery b;
  std::vector<GalleryItem> pairs;
  const cplx r = rng.unit_phase();
  pairs.push_back(gallery("twisted_bishift", rp({{"r", r}, {"window", 7.0}})));
  pairs.push_back(gallery("hardy_twisted_pair", rp({{"r", r}, {"window", 24.0}})));
  pairs.push_back(gallery("quarter_plane_pair", rp({{"window", 4.0}})));
  Tolerance t12;
  t12.residual_tol = 1e-12;
  for (const GalleryItem& g : pairs) {
    const Operator &V1 = g.ops[0], &V2 = g.ops[1], &U = *g.twist;
    b.worst("power_identities", twist_power_identities(V1, V2, U, 6, t12).all.residual);
    const WanderingJoin w = wandering_join(V1, V2, U);
    b.worst("joins", w.joins.residual);
    b.worst("u_hat_unitary", w.u_hat_unitary.residual);
    b.worst("adjoint_images", w.adjoint_images.residual);
    const CriterionReport cr = doubly_twisted_criterion(V1, V2, U);
    b.mismatch(!cr.agree);
    if (cr.doubly_twisted.holds) {
      const JointReducing jr = joint_reducing_check(V1, V2, U);
      b.worst("joint_reducing", std::max({jr.parts_reduce.residual, jr.unitary_containment.residual,
                                          jr.shift_containment.residual}));
    }
  }
  c.add("wandering.power_identities", Verdict::from(b.get("power_identities"), 1e-12), true);
  c.add("wandering.joins", Verdict::from(std::max({b.get("joins"), b.get("u_hat_unitary"), b.get("adjoint_images")}), 1e-10), true);
  c.add("wandering.joint_reducing", Verdict::from(b.get("joint_reducing"), 1e-10), true);
  c.add("wandering.criterion_disagreements", Verdict::from(static_cast<double>(b.mismatches()), 0.0), true);
  rep["wandering"] = b.json(static_cast<int>(pairs.size()));
}

}  // namespace

void run_suite(std::uint64_t seed, const Tolerance& tol, Checks& c, Json& rep) {
  tol.validate();
  // every battery draws from its own stream so adding one does not shift the others
  auto stream = [seed](std::uint64_t k) { return Rng(seed * 0x9E3779B97F4A7C15ULL + k); };
  Rng g0 = stream(1), g1 = stream(2), g2 = stream(3), g3 = stream(4), g4 = stream(5), g5 = stream(6), g6 = stream(7);
  gallery_examples(g0, c, rep);
  canonical_battery(g1, 40, c, rep);
  wold_battery(g2, 12, c, rep);
  partner_battery(g3, 20, c, rep);
  grid_battery(g4, 10, c, rep);
  dilation_battery(g5, 10, c, rep);
  wandering_battery(g6, c, rep);
  rep["seed"] = seed;
}

}  // namespace twistdec::app
