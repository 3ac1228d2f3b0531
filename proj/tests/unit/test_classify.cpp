#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twistdec/classify.hpp"
#include "twistdec/gallery.hpp"
#include "twistdec/rng.hpp"
#include "twistdec/synth.hpp"

using namespace twistdec;

namespace {

Params rp(std::initializer_list<std::pair<const std::string, cplx>> xs) { return Params(xs); }

// Sample of operators of every species: gallery members plus dense draws.
std::vector<Operator> assorted(Rng& rng) {
  std::vector<Operator> out;
  for (const std::string& name : gallery_names()) {
    const GalleryItem g = gallery(name, rp({{"window", 6.0}}));
    out.insert(out.end(), g.ops.begin(), g.ops.end());
  }
  for (int s = 0; s < 6; ++s) {
    out.push_back(make_dense(rng.unitary(4)));
    CMatrix G = rng.gaussian(4, 4);
    out.push_back(make_dense(G / (1.1 * opnorm(G))));
  }
  return out;
}

}  // namespace

TEST(Species, UnilateralShift) {
  const Species s = species(gallery("unilateral_shift", rp({{"window", 12.0}})).ops[0]);
  EXPECT_TRUE(s.isometry.holds);
  EXPECT_FALSE(s.unitary.holds);
  EXPECT_FALSE(s.coisometry.holds);
  EXPECT_TRUE(s.partial_isometry.holds);
  EXPECT_TRUE(s.contraction.holds);
}

TEST(Species, C4PartialIsometryButNotItsSquare) {
  const Operator R = gallery("c4_example", rp({{"a", 0.5}})).ops[0];
  EXPECT_TRUE(is_partial_isometry(R).holds);
  EXPECT_FALSE(is_partial_isometry(compose(R, R)).holds);
  // independent check: R R* R = R, while the square misses by a visible margin
  EXPECT_LE(oracle::partial_isometry_defect(R.matrix()), 1e-15);
  EXPECT_GT(oracle::partial_isometry_defect(R.matrix() * R.matrix()), 0.1);
}

TEST(Species, ScaledShiftIsStrictContraction) {
  const Species s = species(gallery("m_z_alpha", rp({{"alpha", 0.7}, {"window", 12.0}})).ops[0]);
  EXPECT_TRUE(s.contraction.holds);
  EXPECT_FALSE(s.isometry.holds);
  EXPECT_NEAR(s.isometry.residual, 1.0 - 0.49, 1e-14);
}

TEST(Species, UnitaryIffIsometryAndCoisometry) {
  Rng rng(301);
  for (const Operator& A : assorted(rng)) {
    const Species s = species(A);
    EXPECT_EQ(s.unitary.holds, s.isometry.holds && s.coisometry.holds) << A.name();
  }
}

TEST(PowerPartialIsometry, TruncatedShift) {
  const Operator R = gallery("truncated_shift", rp({{"k", 3.0}})).ops[0];
  const PowerPartialIsometry p = is_power_partial_isometry(R, 8);
  EXPECT_TRUE(p.verdict.holds);
  EXPECT_EQ(p.first_failing, 0);
}

TEST(PowerPartialIsometry, C4FailsAtSquare) {
  const PowerPartialIsometry p = is_power_partial_isometry(gallery("c4_example", rp({{"a", 0.5}})).ops[0], 4);
  EXPECT_FALSE(p.verdict.holds);
  EXPECT_EQ(p.first_failing, 2);
}

TEST(PowerPartialIsometry, IsometriesAndCoisometries) {
  Rng rng(302);
  for (const Operator& A : assorted(rng)) {
    const Species s = species(A);
    if (!s.isometry.holds && !s.coisometry.holds) continue;
    EXPECT_TRUE(is_power_partial_isometry(A, 4).verdict.holds) << A.name();
  }
}

TEST(PairRelations, HardyDoublyTwisted) {
  const GalleryItem g = gallery("hardy_doubly_twisted_pair", rp({{"r", std::polar(1.0, 0.3)}, {"alpha", 0.6}, {"window", 24.0}}));
  const PairReport p = pair_relations(g.ops[0], g.ops[1], *g.twist);
  EXPECT_TRUE(p.twisted.holds);
  EXPECT_TRUE(p.doubly_twisted.holds);
}

TEST(PairRelations, HardyTwistedOnlyFailsAtOrigin) {
  const GalleryItem g = gallery("hardy_twisted_pair", rp({{"r", cplx(0.0, 1.0)}, {"window", 24.0}}));
  const PairReport p = pair_relations(g.ops[0], g.ops[1], *g.twist);
  EXPECT_TRUE(p.twisted.holds);
  EXPECT_FALSE(p.doubly_twisted.holds);
  ASSERT_TRUE(p.adjoint_relation.first_violation.has_value());
  EXPECT_EQ(p.adjoint_relation.first_violation->i, 0);
}

TEST(PairRelations, TruncatedShiftWithItself) {
  const Operator T = gallery("truncated_shift", rp({{"k", 3.0}})).ops[0];
  const PairReport p = pair_relations(T, T, Operator::identity(T.space()));
  EXPECT_TRUE(p.twisted.holds);
  EXPECT_FALSE(p.doubly_twisted.holds);
}

TEST(PairRelations, NonUnitaryTwistRejected) {
  const Operator T = make_dense(CMatrix::Identity(2, 2));
  EXPECT_THROW(pair_relations(T, T, make_dense(0.5 * CMatrix::Identity(2, 2))), Error);
}

TEST(PairRelations, DoublyTwistedImpliesTwistedAndIsSymmetric) {
  Rng rng(303);
  std::vector<std::array<Operator, 3>> pairs;
  for (const std::string name : {"hardy_twisted_pair", "hardy_doubly_twisted_pair", "bilateral_pair",
                                 "quarter_plane_pair", "twisted_bishift"}) {
    const GalleryItem g = gallery(name, rp({{"window", 6.0}}));
    pairs.push_back({g.ops[0], g.ops[1], *g.twist});
  }
  for (int s = 0; s < 10; ++s) {
    const synth::PartnerSample x = synth::doubly_twisted_partner(rng);
    pairs.push_back({x.T, x.V, x.U});
    const synth::UnitaryPair u = synth::twisted_unitaries(rng);
    pairs.push_back({u.T1, u.T2, u.U});
  }
  for (const auto& [A, B, U] : pairs) {
    const PairReport p = pair_relations(A, B, U);
    if (p.doubly_twisted.holds) {
      EXPECT_TRUE(p.twisted.holds);
      EXPECT_TRUE(pair_relations(B, A, adjoint(U)).doubly_twisted.holds) << A.name() << "," << B.name();
    }
  }
}

TEST(PairRelations, TwistedUnitariesAreDoublyTwisted) {
  Rng rng(304);
  for (int s = 0; s < 30; ++s) {
    const synth::UnitaryPair u = synth::twisted_unitaries(rng);
    const PairReport p = pair_relations(u.T1, u.T2, u.U);
    ASSERT_TRUE(p.twisted.holds);
    EXPECT_TRUE(p.doubly_twisted.holds) << p.doubly_twisted.residual;
  }
}

TEST(ClassDiagnosis, BilateralWeightsDecayLikeQuarterPowers) {
  const GalleryItem g = gallery("bilateral_pair", rp({{"window", 80.0}}));
  ClassOptions opt;
  opt.n_max = 20;
  const ClassDiagnosis d = class_diagnosis(g.ops[0], {unit(Label{0, 0, 0})}, opt);
  EXPECT_EQ(d.forward, Decision::zero);
  EXPECT_EQ(d.backward, Decision::zero);
  EXPECT_TRUE(d.c00());
  ASSERT_EQ(d.evidence.size(), 1u);
  for (int n = 0; n <= 20; ++n)
    EXPECT_NEAR(d.evidence[0].forward[static_cast<std::size_t>(n)], oracle::quarter_decay(n), 1e-15 * oracle::quarter_decay(n));
}

TEST(ClassDiagnosis, UnilateralShift) {
  ClassOptions opt;
  opt.n_max = 16;
  // e0: S*^n e0 = 0 from n = 1 on, S^n e0 stays a unit vector
  const ClassDiagnosis d = class_diagnosis(gallery("unilateral_shift", rp({{"window", 48.0}})).ops[0],
                                           {unit(Label{0, 0, 0})}, opt);
  EXPECT_EQ(d.forward, Decision::one);
  EXPECT_EQ(d.backward, Decision::zero);
  EXPECT_FALSE(d.c00());
  EXPECT_STREQ(forward_class(d.forward), "C1.");
  EXPECT_STREQ(backward_class(d.backward), "C.0");
}

TEST(ClassDiagnosis, SlowDecayIsUndecided) {
  // ||T^n h|| = 0.97^n: above the decay cut at n_max and still falling
  ClassOptions opt;
  opt.n_max = 20;
  const ClassDiagnosis d = class_diagnosis(gallery("m_z_alpha", rp({{"alpha", 0.97}, {"window", 64.0}})).ops[0], opt);
  EXPECT_EQ(d.forward, Decision::undecided);
}

TEST(ClassDiagnosis, DecisionsFollowEvidence) {
  Rng rng(305);
  ClassOptions opt;
  opt.n_max = 24;
  for (int s = 0; s < 20; ++s) {
    const synth::ContractionSample x = synth::random_contraction(rng, rng.integer(2, 5));
    const ClassDiagnosis d = class_diagnosis(x.T, opt);
    for (const ProbeEvidence& ev : d.evidence) {
      if (d.forward == Decision::zero) EXPECT_LE(ev.forward.back(), opt.decay_tol);
      if (d.forward == Decision::one) EXPECT_GT(*std::min_element(ev.forward.begin(), ev.forward.end()), opt.decided_floor);
      if (d.backward == Decision::zero) EXPECT_LE(ev.backward.back(), opt.decay_tol);
      if (d.backward == Decision::one) EXPECT_GT(*std::min_element(ev.backward.begin(), ev.backward.end()), opt.decided_floor);
    }
  }
}
