#include <gtest/gtest.h>

#include "twistdec/dilation.hpp"
#include "twistdec/gallery.hpp"
#include "twistdec/rng.hpp"
#include "twistdec/synth.hpp"

using namespace twistdec;

namespace {

Params rp(std::initializer_list<std::pair<const std::string, cplx>> xs) { return Params(xs); }

CMatrix strict_contraction(Rng& rng, Eigen::Index n, double norm) {
  const CMatrix G = rng.gaussian(n, n);
  return G * (norm / opnorm(G));
}

// ||P_H S^k|_H - T^k|| for k = 1..N, from the materialized S.
double dilation_identity_gap(const DilationSpace& d) {
  const Eigen::Index n = d.base_dim();
  CMatrix Sk = CMatrix::Identity(d.dim(), d.dim()), Tk = CMatrix::Identity(n, n);
  double worst = 0.0;
  for (int k = 1; k <= d.depth; ++k) {
    Sk = d.S * Sk;
    Tk = d.T * Tk;
    worst = std::max(worst, opnorm(Sk.topLeftCorner(n, n) - Tk));
  }
  return worst;
}

}  // namespace

TEST(Dilation, UnitaryHasNoDefect) {
  Rng rng(501);
  const CMatrix U = rng.unitary(3);
  const DilationSpace d = minimal_isometric_dilation(make_dense(U), 4);
  EXPECT_EQ(d.defect_dim(), 0);
  EXPECT_EQ(d.dim(), 3);
  EXPECT_LE(opnorm(d.S - U), 1e-15);
  EXPECT_TRUE(d.exactness.holds);
}

TEST(Dilation, ZeroOnOneDimensionIsTruncatedShift) {
  const DilationSpace d = minimal_isometric_dilation(make_dense(CMatrix::Zero(1, 1)), 5);
  ASSERT_EQ(d.dim(), 6);
  EXPECT_LE(opnorm(d.S - truncated_shift_matrix(6, 1)), 1e-15);
  for (double r : d.identity_residuals) EXPECT_EQ(r, 0.0);
}

TEST(Dilation, RandomContractionIdentityAndGuardBand) {
  Rng rng(502);
  for (int s = 0; s < 10; ++s) {
    const CMatrix T = strict_contraction(rng, 4, rng.uniform(0.2, 1.0));
    const DilationSpace d = minimal_isometric_dilation(make_dense(T), 6);
    ASSERT_EQ(d.identity_residuals.size(), 6u);
    for (double r : d.identity_residuals) EXPECT_LE(r, 1e-12);
    EXPECT_LE(dilation_identity_gap(d), 1e-12);
    EXPECT_TRUE(d.minimal.holds);
    EXPECT_TRUE(d.isometric_below_top.holds);
    // S is isometric on levels < N, checked directly
    const CMatrix L = d.levels_upto(d.depth - 1);
    const CMatrix SL = d.S * L;
    EXPECT_LE(opnorm(SL.adjoint() * SL - L.adjoint() * L), 1e-12);
  }
}

TEST(Dilation, RejectsNonContraction) {
  EXPECT_THROW(minimal_isometric_dilation(make_dense(2.0 * CMatrix::Identity(2, 2)), 3), Error);
}

TEST(Dilation, TwoBuildsAreIntertwined) {
  Rng rng(503);
  for (int s = 0; s < 10; ++s) {
    const Operator T = make_dense(strict_contraction(rng, 3, rng.uniform(0.3, 0.95)));
    const DilationSpace d1 = minimal_isometric_dilation(T, 5);
    DilationOptions other;
    other.defect_rotation = rng.unitary(d1.defect_dim());
    const DilationSpace d2 = minimal_isometric_dilation(T, 5, {}, other);
    const Intertwiner I = dilation_intertwiner(d1, d2);
    EXPECT_LE(I.intertwines_S.residual, 1e-9);
    EXPECT_TRUE(I.unitary.holds);
    // same build: the identity
    const Intertwiner J = dilation_intertwiner(d1, d1);
    EXPECT_LE(opnorm(J.U_hat - CMatrix::Identity(d1.dim(), d1.dim())), 1e-9);
  }
}

TEST(Dilation, IntertwinerNeedsSameBase) {
  Rng rng(504);
  const DilationSpace a = minimal_isometric_dilation(make_dense(strict_contraction(rng, 2, 0.5)), 3);
  const DilationSpace b = minimal_isometric_dilation(make_dense(strict_contraction(rng, 2, 0.5)), 3);
  EXPECT_THROW(dilation_intertwiner(a, b), Error);
}

TEST(TwistedExtension, CyclicFamily) {
  Rng rng(505);
  for (int s = 0; s < 20; ++s) {
    const synth::CyclicSample c = synth::cyclic_sample(rng);
    const TwistedExtension e = twisted_extension(c.T, c.V, c.U, 6);
    EXPECT_LE(e.hyp_adjoint_relation, 1e-12);
    EXPECT_TRUE(e.twist_relation.holds) << e.twist_relation.residual;
    EXPECT_TRUE(e.adjoint_relation.holds) << e.adjoint_relation.residual;
    EXPECT_TRUE(e.isometry.holds);
    EXPECT_TRUE(e.u_unitary.holds);
    EXPECT_TRUE(e.restriction_exact);
    // bit-level block equality on H
    const Eigen::Index n = c.T.matrix().rows();
    EXPECT_TRUE(e.V_ext.topLeftCorner(n, n) == c.V.matrix());
    EXPECT_TRUE(e.U_ext.topLeftCorner(n, n) == c.U.matrix());
    if (e.route_agreement) EXPECT_LE(*e.route_agreement, 1e-10);
  }
}

TEST(TwistedExtension, IdentityPartner) {
  Rng rng(506);
  const Operator T = make_dense(strict_contraction(rng, 3, 0.8));
  const Operator I = make_dense(CMatrix::Identity(3, 3));
  const TwistedExtension e = twisted_extension(T, I, I, 5);
  EXPECT_LE(opnorm(e.V_ext - CMatrix::Identity(e.dilation.dim(), e.dilation.dim())), 1e-12);
  EXPECT_TRUE(e.adjoint_relation.holds);
}

TEST(TwistedExtension, UnitaryBaseNeedsNoDefect) {
  // T unitary in the cyclic family when |c| = 1
  const GalleryItem g = gallery("cyclic_family", rp({{"n", 4.0}, {"p", 1.0}, {"c", cplx(0.0, 1.0)}}));
  const TwistedExtension e = twisted_extension(g.ops[0], g.ops[1], *g.twist, 4);
  EXPECT_EQ(e.dilation.dim(), 4);
  EXPECT_LE(opnorm(e.V_ext - g.ops[1].matrix()), 0.0);
  EXPECT_TRUE(e.adjoint_relation.holds);
}

TEST(TwistedExtension, HypothesisChecked) {
  Rng rng(508);
  const Operator T = make_dense(strict_contraction(rng, 3, 0.8));
  const Operator V = make_dense(rng.unitary(3));
  EXPECT_THROW(twisted_extension(T, V, make_dense(CMatrix::Identity(3, 3)), 4), Error);
}

TEST(TwistedExtension, ExtensionsAreIntertwined) {
  Rng rng(509);
  for (int s = 0; s < 10; ++s) {
    const synth::CyclicSample c = synth::cyclic_sample(rng);
    const TwistedExtension e1 = twisted_extension(c.T, c.V, c.U, 5);
    if (e1.dilation.defect_dim() == 0) continue;
    DilationOptions other;
    other.defect_rotation = rng.unitary(e1.dilation.defect_dim());
    const TwistedExtension e2 = twisted_extension(c.T, c.V, c.U, 5, {}, ExtensionRoute::block_formula, other);
    const Intertwiner I = dilation_intertwiner(e1, e2);
    ASSERT_TRUE(I.intertwines_V.has_value());
    EXPECT_LE(I.intertwines_V->residual, 1e-9);
    EXPECT_LE(I.intertwines_S.residual, 1e-9);
  }
}

TEST(Upgrade, ShiftCoshiftPair) {
  for (const cplx r : {cplx(1.0), cplx(0.0, 1.0), std::polar(1.0, 2.0)}) {
    const GalleryItem g = gallery("shift_coshift_pair", rp({{"r", r}, {"window", 6.0}}));
    const UpgradeCheck u = coisometry_upgrade_check(g.ops[0], g.ops[1], *g.twist);
    EXPECT_TRUE(u.doubly_twisted.holds);
    EXPECT_LE(u.route_gap, 1e-12);
  }
}

TEST(Upgrade, UnitaryPair) {
  Rng rng(510);
  const CMatrix D = CMatrix(Eigen::VectorXcd::NullaryExpr(3, [&] { return rng.unit_phase(); }).asDiagonal());
  const CMatrix E = CMatrix(Eigen::VectorXcd::NullaryExpr(3, [&] { return rng.unit_phase(); }).asDiagonal());
  const UpgradeCheck u = coisometry_upgrade_check(make_dense(D), make_dense(E), make_dense(CMatrix::Identity(3, 3)));
  EXPECT_TRUE(u.doubly_twisted.holds);
  EXPECT_LE(u.route_gap, 1e-12);
}

TEST(Upgrade, SpeciesChecked) {
  const GalleryItem g = gallery("shift_coshift_pair", rp({{"window", 6.0}}));
  EXPECT_THROW(coisometry_upgrade_check(g.ops[1], g.ops[0], *g.twist), Error);
}

TEST(DefectIndex, Examples) {
  Rng rng(511);
  EXPECT_EQ(defect_index(make_dense(rng.unitary(3))).sigma_T_star, 0);
  EXPECT_EQ(defect_index(make_dense(CMatrix::Zero(3, 3))).sigma_T_star, 3);
  // coisometry-like: T* isometric except on one direction
  CMatrix D = CMatrix::Identity(4, 4);
  D(2, 2) = 0.4;
  const CMatrix Q = rng.unitary(4);
  EXPECT_EQ(defect_index(make_dense(Q * D * rng.unitary(4))).sigma_T_star, 1);
}

TEST(DilationWold, CyclicFamilyPartsReduceS) {
  Rng rng(512);
  for (int s = 0; s < 10; ++s) {
    const synth::CyclicSample c = synth::cyclic_sample(rng);
    const DilationWoldReport r = dilation_wold_reduction(c.T, c.V, c.U, 5);
    EXPECT_LE(r.unitary_part_reduces_S.residual, 1e-9);
    EXPECT_LE(r.shift_part_reduces_S.residual, 1e-9);
  }
}

TEST(DilationWold, IdentityPartner) {
  Rng rng(513);
  const Operator T = make_dense(strict_contraction(rng, 2, 0.6));
  const Operator I = make_dense(CMatrix::Identity(2, 2));
  const DilationWoldReport r = dilation_wold_reduction(T, I, I, 4);
  EXPECT_TRUE(r.unitary_part_reduces_S.holds);
  EXPECT_TRUE(r.shift_part_reduces_S.holds);
}
