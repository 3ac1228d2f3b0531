#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twistdec/decompose.hpp"
#include "twistdec/errors.hpp"
#include "twistdec/numkernel.hpp"
#include "twistdec/operator.hpp"
#include "twistdec/rng.hpp"

using namespace twistdec;

namespace {

CMatrix diag(std::initializer_list<double> d) {
  CMatrix D = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (double x : d) D(k, k) = x, ++k;
  return D;
}

Subspace random_subspace(Rng& rng, Eigen::Index n, Eigen::Index k) {
  return span_of(rng.gaussian(n, k), n);
}

void expect_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "no error thrown, expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(PsdSqrt, Identity) {
  const CMatrix I = CMatrix::Identity(3, 3);
  EXPECT_LE(opnorm(psd_sqrt(I) - I), 1e-15);
}

TEST(PsdSqrt, Diagonal) {
  EXPECT_LE(opnorm(psd_sqrt(diag({0.25, 0.0})) - diag({0.5, 0.0})), 1e-15);
}

TEST(PsdSqrt, RandomGram) {
  Rng rng(101);
  for (int s = 0; s < 20; ++s) {
    const CMatrix G = rng.gaussian(4, 4);
    const CMatrix A = G.adjoint() * G;
    const CMatrix B = psd_sqrt(A);
    EXPECT_LE(opnorm(B * B - A), 1e-10 * (1.0 + opnorm(A)));
    EXPECT_LE(hermitian_defect(B), 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(B);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(PsdSqrt, SquareRootOfSquareIsIdentity) {
  Rng rng(102);
  for (int s = 0; s < 20; ++s) {
    const CMatrix G = rng.gaussian(5, 3);
    const CMatrix B = G * G.adjoint();  // PSD, rank 3
    EXPECT_LE(opnorm(psd_sqrt(B * B) - B), 1e-10 * (1.0 + opnorm(B) * opnorm(B)));
  }
}

TEST(PsdSqrt, RoundoffNegativesClamped) {
  CMatrix A = diag({1.0, -1e-14});
  const CMatrix B = psd_sqrt(A);
  EXPECT_EQ(B(1, 1), cplx(0.0));
}

TEST(PsdSqrt, Errors) {
  CMatrix A = CMatrix::Zero(2, 2);
  A(0, 1) = 1.0;
  expect_code(ErrorCode::NotHermitian, [&] { psd_sqrt(A); });
  expect_code(ErrorCode::IndefiniteInput, [&] { psd_sqrt(diag({1.0, -0.5})); });
}

TEST(KernelBasis, ZeroMatrixIsEverything) {
  EXPECT_EQ(kernel_basis(CMatrix::Zero(3, 3)).dim(), 3);
}

TEST(KernelBasis, NilpotentColumn) {
  CMatrix A = CMatrix::Zero(2, 2);
  A(1, 0) = 1.0;  // e0 -> e1
  const Subspace k = kernel_basis(A);
  ASSERT_EQ(k.dim(), 1);
  EXPECT_NEAR(std::abs(k.basis()(1, 0)), 1.0, 1e-15);
}

TEST(KernelBasis, IsometryDefectVanishes) {
  Rng rng(103);
  const CMatrix T = rng.unitary(5).leftCols(3);  // orthonormal columns
  const CMatrix D = CMatrix::Identity(3, 3) - T.adjoint() * T;
  EXPECT_EQ(kernel_basis(D, {}, 1.0).dim(), 3);
}

TEST(KernelBasis, ResidualBoundAndOrthogonalToAdjointRange) {
  Rng rng(104);
  const Tolerance tol;
  for (int s = 0; s < 20; ++s) {
    const Eigen::Index r = rng.integer(1, 4);
    const CMatrix A = rng.gaussian(6, r) * rng.gaussian(r, 6);
    const Subspace k = kernel_basis(A, tol);
    EXPECT_EQ(k.dim(), 6 - r);
    EXPECT_LE(opnorm(A * k.basis()), 10 * tol.rank_tol * opnorm(A));
    const Subspace ra = range_basis(A.adjoint(), tol);
    EXPECT_LE(opnorm(k.basis().adjoint() * ra.basis()), 10 * tol.rank_tol);
    EXPECT_LE(orthonormality_defect(k.basis()), 10 * tol.rank_tol);
  }
}

TEST(Intersect, TrivialCases) {
  const Subspace e0 = Subspace::coordinates(3, {0}), e1 = Subspace::coordinates(3, {1});
  EXPECT_EQ(intersect(e0, e1).dim(), 0);
  EXPECT_LE(projector_distance(intersect(e0, e0), e0), 1e-14);
}

TEST(Intersect, RandomThreeDimInFour) {
  Rng rng(105);
  for (int s = 0; s < 20; ++s) {
    const Subspace a = random_subspace(rng, 4, 3), b = random_subspace(rng, 4, 3);
    const Subspace ab = intersect(a, b);
    // oracle: the intersection is the null space of the stacked complement projectors
    const CMatrix I = CMatrix::Identity(4, 4);
    CMatrix stack(8, 4);
    stack << I - oracle::projector(a.basis()), I - oracle::projector(b.basis());
    const oracle::Mat expected = oracle::psd_null_space(stack.adjoint() * stack, 1e-10);
    EXPECT_EQ(ab.dim(), 2);
    EXPECT_EQ(expected.cols(), 2);
    EXPECT_LE(oracle::projector_gap(ab.basis(), expected, 4), 1e-10);
    EXPECT_LE(containment_residual(ab, a), 1e-10);
    EXPECT_LE(containment_residual(ab, b), 1e-10);
  }
}

TEST(Intersect, CommutativeAndIdempotent) {
  Rng rng(106);
  for (int s = 0; s < 20; ++s) {
    const Eigen::Index n = rng.integer(3, 7);
    const Subspace a = random_subspace(rng, n, rng.integer(1, static_cast<int>(n))),
                   b = random_subspace(rng, n, rng.integer(1, static_cast<int>(n)));
    EXPECT_LE(projector_distance(intersect(a, b), intersect(b, a)), 1e-10);
    EXPECT_LE(projector_distance(intersect(a, a), a), 1e-10);
  }
}

TEST(Intersect, AmbientMismatch) {
  expect_code(ErrorCode::AmbientMismatch, [] { intersect(Subspace::full(2), Subspace::full(3)); });
}

TEST(Subspaces, JoinAndComplement) {
  Rng rng(107);
  const Subspace a = random_subspace(rng, 6, 2);
  const Subspace c = complement(a);
  EXPECT_EQ(c.dim(), 4);
  EXPECT_LE(projector_distance(join(a, c), Subspace::full(6)), 1e-12);
  EXPECT_LE(opnorm(a.basis().adjoint() * c.basis()), 1e-12);
  const Subspace b = random_subspace(rng, 6, 3);
  const Subspace ab = join(a, b);
  EXPECT_EQ(ab.dim(), 5);
  EXPECT_LE(relative_complement(ab, a).dim(), 3);
}

TEST(Reducing, BlockDiagonal) {
  CMatrix A = CMatrix::Zero(3, 3);
  A(0, 0) = 2.0;
  A(1, 2) = 1.0;
  A(2, 1) = 3.0;
  EXPECT_TRUE(is_reducing(A, Subspace::coordinates(3, {0})).holds);
}

TEST(Reducing, JordanBlockInvariantOnly) {
  CMatrix J = CMatrix::Zero(2, 2);
  J(0, 1) = 1.0;  // e1 -> e0
  const Subspace e0 = Subspace::coordinates(2, {0});
  EXPECT_TRUE(is_invariant(J, e0).holds);
  const Verdict r = is_reducing(J, e0);
  EXPECT_FALSE(r.holds);
  EXPECT_NEAR(r.residual, 1.0, 1e-15);
}

TEST(Reducing, EqualsInvarianceUnderOperatorAndAdjoint) {
  Rng rng(108);
  for (int s = 0; s < 40; ++s) {
    const Eigen::Index n = 4;
    // half the draws are block diagonal in a random basis, so both outcomes occur
    CMatrix A = rng.gaussian(n, n);
    if (s % 2 == 0) A.topRightCorner(2, 2).setZero();
    if (s % 4 == 0) A.bottomLeftCorner(2, 2).setZero();
    const CMatrix Q = rng.unitary(n);
    const CMatrix B = Q * A * Q.adjoint();
    const Subspace S(n, Q.leftCols(2), 1e-10);
    const bool both = is_invariant(B, S).holds && is_invariant(CMatrix(B.adjoint()), S).holds;
    EXPECT_EQ(is_reducing(B, S).holds, both);
  }
}

TEST(Reducing, CanonicalUnitaryPartOfRandomContraction) {
  Rng rng(109);
  for (int s = 0; s < 10; ++s) {
    CMatrix C = rng.gaussian(3, 3);
    C /= 1.25 * opnorm(C);
    CMatrix T = CMatrix::Zero(5, 5);
    T.topLeftCorner(2, 2) = rng.unitary(2);
    T.bottomRightCorner(3, 3) = C;
    const CMatrix Q = rng.unitary(5);
    const CMatrix M = Q * T * Q.adjoint();
    const CanonicalDecomposition d = canonical(make_dense(M));
    EXPECT_TRUE(is_reducing(M, d.H_u).holds);
    EXPECT_LE(oracle::projector_gap(d.H_u.basis(), oracle::unitary_part(M), 5), 1e-9);
  }
}
