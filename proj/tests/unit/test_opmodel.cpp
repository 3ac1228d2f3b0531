#include <gtest/gtest.h>

#include "twistdec/errors.hpp"
#include "twistdec/gallery.hpp"
#include "twistdec/operator.hpp"
#include "twistdec/rng.hpp"

using namespace twistdec;

namespace {

Label e(long i) { return Label{0, i, 0}; }
Label e(long i, long j) { return Label{0, i, j}; }

double diff(const SparseVec& a, const SparseVec& b) {
  SparseVec d = a;
  axpy(d, -1.0, b);
  return norm(d);
}

// max over window columns of ||A e - B e||
double column_gap(const Operator& A, const Operator& B) {
  double worst = 0.0;
  for (const Label& l : A.space().labels()) worst = std::max(worst, diff(A.apply_basis(l), B.apply_basis(l)));
  return worst;
}

Params rp(std::initializer_list<std::pair<const std::string, cplx>> xs) { return Params(xs); }

}  // namespace

TEST(Space, QuarterPlaneLabelsSatisfyLatticePredicate) {
  const Space sp = Space::quarterplane(3);
  for (const Label& l : sp.labels()) EXPECT_TRUE(l.i >= 0 || l.j >= 0);
  EXPECT_FALSE(sp.in_domain(e(-1, -1)));
  EXPECT_TRUE(sp.in_domain(e(-5, 0)));
  // 7x7 grid minus the 3x3 negative quadrant
  EXPECT_EQ(sp.size(), 49u - 9u);
}

TEST(Space, WindowShapes) {
  EXPECT_EQ(Space::halfline(5).size(), 5u);
  EXPECT_EQ(Space::line(5).size(), 11u);
  EXPECT_EQ(Space::quadrant(4).size(), 16u);
  EXPECT_EQ(Space::dense(3).size(), 3u);
}

TEST(Adjoint, DenseNilpotent) {
  CMatrix N = CMatrix::Zero(2, 2);
  N(0, 1) = 1.0;
  EXPECT_EQ(to_matrix(adjoint(make_dense(N))), CMatrix(N.adjoint()));
}

TEST(Adjoint, UnilateralShiftIsBackwardShift) {
  const Operator S = gallery("unilateral_shift", rp({{"window", 10.0}})).ops[0];
  const Operator B = adjoint(S);
  EXPECT_EQ(norm(B.apply_basis(e(0))), 0.0);
  for (long n = 1; n < 10; ++n) EXPECT_EQ(diff(B.apply_basis(e(n)), unit(e(n - 1))), 0.0);
}

TEST(Adjoint, InnerProductsOfWeightedShift) {
  // <S_r e_m, e_n> = conj(<e_m, S_r* e_n>) on the window
  const cplx r = std::polar(1.0, 0.7);
  const Operator S = gallery("s_r", rp({{"r", r}, {"window", 12.0}})).ops[0];
  const Operator Ss = adjoint(S);
  for (long m = 0; m < 11; ++m)
    for (long n = 0; n < 11; ++n) {
      const cplx lhs = inner(unit(e(n)), S.apply_basis(e(m)));
      const cplx rhs = std::conj(inner(unit(e(m)), Ss.apply_basis(e(n))));
      EXPECT_LE(std::abs(lhs - rhs), 1e-15);
    }
}

TEST(Adjoint, Involution) {
  for (const std::string name : {"s_r", "bilateral_shift", "m_z_alpha"}) {
    const Operator A = gallery(name, rp({{"window", 8.0}})).ops[0];
    EXPECT_EQ(column_gap(adjoint(adjoint(A)), A), 0.0) << name;
  }
  for (const std::string name : {"quarter_plane_pair", "twisted_bishift", "bilateral_pair"}) {
    const GalleryItem g = gallery(name, rp({{"window", 5.0}}));
    for (const Operator& A : g.ops) EXPECT_EQ(column_gap(adjoint(adjoint(A)), A), 0.0) << name;
  }
}

TEST(Compose, IdentityIsNeutral) {
  const Operator A = gallery("s_r", rp({{"r", cplx(0.0, 1.0)}, {"window", 8.0}})).ops[0];
  EXPECT_EQ(column_gap(compose(A, Operator::identity(A.space())), A), 0.0);
}

TEST(Compose, MzAfterSr) {
  const cplx r = std::polar(1.0, 1.3);
  const Operator S = gallery("s_r", rp({{"r", r}, {"window", 16.0}})).ops[0];
  const Operator M = gallery("m_z", rp({{"window", 16.0}})).ops[0];
  const Operator MS = compose(M, S);
  for (long n = 0; n < 10; ++n) EXPECT_LE(diff(MS.apply_basis(e(n)), scaled(unit(e(n + 2)), ipow(r, n + 1))), 1e-14);
  EXPECT_EQ(MS.band(), 2);
}

TEST(Compose, TwistRelationOfHardyPair) {
  Rng rng(201);
  for (int s = 0; s < 5; ++s) {
    const cplx r = rng.unit_phase();
    const Operator S = gallery("s_r", rp({{"r", r}, {"window", 16.0}})).ops[0];
    const Operator M = gallery("m_z", rp({{"window", 16.0}})).ops[0];
    // S_r M_z = r M_z S_r, columnwise
    const Operator lhs = compose(S, M);
    const Operator rhs = compose(Operator::scalar(S.space(), r), compose(M, S));
    EXPECT_LE(column_gap(lhs, rhs), 1e-14);
  }
}

TEST(Compose, AssociativeOnDenseTriples) {
  Rng rng(202);
  for (int s = 0; s < 10; ++s) {
    const CMatrix A = rng.gaussian(5, 5), B = rng.gaussian(5, 5), C = rng.gaussian(5, 5);
    const CMatrix left = to_matrix(compose(compose(make_dense(A), make_dense(B)), make_dense(C)));
    const CMatrix right = to_matrix(compose(make_dense(A), compose(make_dense(B), make_dense(C))));
    EXPECT_LE(opnorm(left - right), 1e-13 * (1.0 + opnorm(A * B * C)));
    EXPECT_LE(opnorm(left - A * B * C), 1e-13 * (1.0 + opnorm(A * B * C)));
  }
}

TEST(Compose, DomainMismatch) {
  const Operator A = make_dense(CMatrix::Identity(2, 2));
  const Operator B = make_dense(CMatrix::Identity(3, 3));
  EXPECT_THROW(compose(A, B), Error);
}

TEST(Gallery, ProductWithAdjointIsHermitian) {
  for (const std::string& name : gallery_names()) {
    const GalleryItem g = gallery(name, rp({{"window", 6.0}}));
    for (const Operator& A : g.ops) {
      const Operator P = compose(A, adjoint(A));
      const Image M = restriction(P);
      EXPECT_LE(opnorm(M.inside - M.inside.adjoint()), 1e-13) << name << " " << A.name();
    }
  }
}

TEST(Gallery, QuarterPlaneShiftsCommute) {
  const GalleryItem g = gallery("quarter_plane_pair", rp({{"window", 4.0}}));
  const Operator& T1 = g.ops[0];
  const Operator& T2 = g.ops[1];
  for (const Label& l : T1.space().labels()) {
    EXPECT_EQ(diff(T1.apply_basis(l), unit(e(l.i + 1, l.j))), 0.0);
    EXPECT_EQ(diff(T2.apply_basis(l), unit(e(l.i, l.j + 1))), 0.0);
  }
  EXPECT_EQ(column_gap(compose(T1, T2), compose(T2, T1)), 0.0);
}

TEST(Gallery, C4Matrix) {
  const CMatrix R = gallery("c4_example", rp({{"a", 0.5}})).ops[0].matrix();
  ASSERT_EQ(R.rows(), 4);
  const double b = std::sqrt(0.75);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) {
      const double x = std::abs(R(i, j));
      EXPECT_TRUE(x == 0.0 || x == 0.5 || x == 1.0 || std::abs(x - b) < 1e-15) << x;
    }
}

TEST(Gallery, TruncatedShiftGramIsCoKernelProjector) {
  const CMatrix R = gallery("truncated_shift", rp({{"k", 3.0}, {"block_dim", 2.0}})).ops[0].matrix();
  ASSERT_EQ(R.rows(), 6);
  const CMatrix G = R.adjoint() * R;
  EXPECT_LE(opnorm(G * G - G), 1e-15);
  EXPECT_EQ(kernel_basis(R).dim(), 2);
  EXPECT_LE(opnorm(R * R * R), 0.0);
}

TEST(Gallery, BilateralPairProduct) {
  const cplx r(0.0, 1.0);
  const double lambda = 0.5;
  const GalleryItem g = gallery("bilateral_pair", rp({{"r", r}, {"lambda", lambda}, {"window", 40.0}}));
  const Operator P = compose(g.ops[0], g.ops[1]);
  for (long n = -20; n <= 20; ++n)
    EXPECT_LE(diff(P.apply_basis(e(n)), scaled(unit(e(n + 2)), lambda * ipow(r, n + 1) / 4.0)), 1e-15) << n;
}

TEST(Gallery, BadParameters) {
  EXPECT_THROW(gallery("s_r", rp({{"r", 0.5}})), Error);
  EXPECT_THROW(gallery("bilateral_pair", rp({{"lambda", 1.0}})), Error);
  EXPECT_THROW(gallery("no_such_example"), Error);
}

TEST(Window, ColumnOutsideWindowFailsLoudly) {
  const Operator S = gallery("unilateral_shift", rp({{"window", 4.0}})).ops[0];
  EXPECT_THROW(column(S, e(7)), Error);
  // the last column leaves the window; coordinates must refuse it
  EXPECT_THROW(to_window(S.apply_basis(e(3)), S.space()), Error);
  double outside = 0.0;
  to_window(S.apply_basis(e(3)), S.space(), outside);
  EXPECT_EQ(outside, 1.0);
}

TEST(Window, CompressRefusesLeakage) {
  const Operator S = gallery("unilateral_shift", rp({{"window", 4.0}})).ops[0];
  EXPECT_THROW(compress(S, Subspace::full(4)), Error);
  EXPECT_NO_THROW(compress(S, Subspace::coordinates(4, {0, 1})));
}

TEST(Describe, LabelStrings) {
  const Space q = Space::quarterplane(2);
  EXPECT_EQ(describe_vector(unit(e(-1, 1)), q), "1 e(-1,1)");
  EXPECT_EQ(describe_vector(scaled(unit(e(3)), 0.5), Space::halfline(5)), "0.5 e3");
}
