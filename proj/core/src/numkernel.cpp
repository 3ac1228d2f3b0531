#include "twistdec/numkernel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace twistdec {

void Tolerance::validate() const {
  if (!(rank_tol > 0.0) || !(residual_tol > 0.0)) {
    fail(ErrorCode::BadParameter, "tolerances must be positive");
  }
}

Subspace::Subspace(Eigen::Index ambient, CMatrix basis, double tol)
    : ambient_(ambient), basis_(std::move(basis)), tol_(tol) {
  if (basis_.cols() == 0) basis_.resize(ambient_, 0);
  if (basis_.rows() != ambient_) {
    fail(ErrorCode::AmbientMismatch, "basis has " + std::to_string(basis_.rows()) +
                                         " rows, ambient is " + std::to_string(ambient_));
  }
}

Subspace Subspace::zero(Eigen::Index ambient, double tol) {
  return Subspace(ambient, CMatrix(ambient, 0), tol);
}

Subspace Subspace::full(Eigen::Index ambient, double tol) {
  return Subspace(ambient, CMatrix::Identity(ambient, ambient), tol);
}

Subspace Subspace::coordinates(Eigen::Index ambient, const std::vector<Eigen::Index>& idx,
                               double tol) {
  CMatrix B = CMatrix::Zero(ambient, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) B(idx[k], static_cast<Eigen::Index>(k)) = 1.0;
  return Subspace(ambient, std::move(B), tol);
}

double Subspace::distance_to(const CVector& x) const {
  if (basis_.cols() == 0) return x.norm();
  return (x - basis_ * (basis_.adjoint() * x)).norm();
}

double opnorm(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  if (A.rows() == 1 || A.cols() == 1) return A.norm();
  Eigen::JacobiSVD<CMatrix> svd(A);
  return svd.singularValues()(0);
}

double hermitian_defect(const CMatrix& A) {
  if (A.rows() != A.cols()) fail(ErrorCode::NotHermitian, "matrix is not square");
  return opnorm(A - A.adjoint());
}

CMatrix psd_sqrt(const CMatrix& A, const Tolerance& tol) {
  const double defect = hermitian_defect(A);
  if (defect > tol.residual_tol * std::max(1.0, opnorm(A))) {
    fail(ErrorCode::NotHermitian, "||A - A*|| = " + std::to_string(defect));
  }
  if (A.size() == 0) return A;
  const CMatrix H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(H);
  Eigen::VectorXd lam = eig.eigenvalues();
  if (lam.minCoeff() < -100.0 * tol.residual_tol) {
    fail(ErrorCode::IndefiniteInput, "eigenvalue " + std::to_string(lam.minCoeff()));
  }
  // Roundoff-level eigenvalues are set to zero so that, e.g., the defect
  // operator of a unitary comes out exactly zero.
  const double clamp = tol.residual_tol * std::max(1.0, lam.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = lam(i) <= clamp ? 0.0 : std::sqrt(lam(i));
  const CMatrix& V = eig.eigenvectors();
  CMatrix B = V * lam.cast<cplx>().asDiagonal() * V.adjoint();
  return 0.5 * (B + B.adjoint());
}

namespace {

double cutoff_for(const Eigen::VectorXd& sv, const Tolerance& tol, double floor) {
  const double smax = sv.size() ? sv(0) : 0.0;
  return tol.rank_tol * std::max(smax, floor);
}

Eigen::Index rank_from(const Eigen::VectorXd& sv, double cutoff) {
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

}  // namespace

// Jacobi throughout: BDCSVD in Eigen 3.4.0 misreports small singular values
// of some matrices with clustered spectra (0.999998 where the true value is
// 1e-15), which silently changes ranks.
Subspace kernel_basis(const CMatrix& A, const Tolerance& tol, double floor) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0 || n == 0) return Subspace::full(n, tol.rank_tol);
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullV);
  const Eigen::Index r = rank_from(svd.singularValues(), cutoff_for(svd.singularValues(), tol, floor));
  return Subspace(n, svd.matrixV().rightCols(n - r), tol.rank_tol);
}

Subspace range_basis(const CMatrix& A, const Tolerance& tol, double floor) {
  const Eigen::Index m = A.rows();
  if (m == 0 || A.cols() == 0) return Subspace::zero(m, tol.rank_tol);
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU);
  const Eigen::Index r = rank_from(svd.singularValues(), cutoff_for(svd.singularValues(), tol, floor));
  return Subspace(m, svd.matrixU().leftCols(r), tol.rank_tol);
}

Eigen::Index numerical_rank(const CMatrix& A, const Tolerance& tol, double floor) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  return rank_from(svd.singularValues(), cutoff_for(svd.singularValues(), tol, floor));
}

Subspace span_of(const CMatrix& columns, Eigen::Index ambient, const Tolerance& tol, double floor) {
  if (columns.rows() != ambient) fail(ErrorCode::AmbientMismatch, "span_of: row count");
  return range_basis(columns, tol, floor);
}

Subspace intersect(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  if (a.ambient() != b.ambient()) fail(ErrorCode::AmbientMismatch, "intersect");
  if (a.empty() || b.empty()) return Subspace::zero(a.ambient(), tol.rank_tol);
  // x = Q_a y lies in b iff (I - P_b) Q_a y = 0. Stacking the two complement
  // projectors gives the same kernel; restricting to Q_a first is cheaper.
  const CMatrix& Qa = a.basis();
  const CMatrix& Qb = b.basis();
  const CMatrix M = Qa - Qb * (Qb.adjoint() * Qa);
  const Subspace y = kernel_basis(M, tol, 1.0);
  return Subspace(a.ambient(), Qa * y.basis(), tol.rank_tol);
}

Subspace join(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  if (a.ambient() != b.ambient()) fail(ErrorCode::AmbientMismatch, "join");
  CMatrix cols(a.ambient(), a.dim() + b.dim());
  cols << a.basis(), b.basis();
  return range_basis(cols, tol, 1.0);
}

Subspace complement(const Subspace& s, const Tolerance& tol) {
  if (s.empty()) return Subspace::full(s.ambient(), tol.rank_tol);
  return kernel_basis(s.basis().adjoint(), tol, 1.0);
}

Subspace relative_complement(const Subspace& outer, const Subspace& inner, const Tolerance& tol) {
  if (outer.ambient() != inner.ambient()) fail(ErrorCode::AmbientMismatch, "relative_complement");
  if (inner.empty() || outer.empty()) return outer;
  const CMatrix M = inner.basis().adjoint() * outer.basis();
  const Subspace y = kernel_basis(M, tol, 1.0);
  return Subspace(outer.ambient(), outer.basis() * y.basis(), tol.rank_tol);
}

double projector_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) fail(ErrorCode::AmbientMismatch, "projector_distance");
  return opnorm(a.projector() - b.projector());
}

double containment_residual(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) fail(ErrorCode::AmbientMismatch, "containment_residual");
  if (a.empty()) return 0.0;
  if (b.empty()) return opnorm(a.basis());
  const CMatrix& Q = a.basis();
  return opnorm(Q - b.basis() * (b.basis().adjoint() * Q));
}

double orthonormality_defect(const CMatrix& Q) {
  if (Q.cols() == 0) return 0.0;
  const CMatrix G = Q.adjoint() * Q - CMatrix::Identity(Q.cols(), Q.cols());
  return G.cwiseAbs().maxCoeff();
}

Verdict is_invariant(const CMatrix& A, const Subspace& S, const Tolerance& tol) {
  if (A.rows() != S.ambient() || A.cols() != S.ambient()) {
    fail(ErrorCode::AmbientMismatch, "is_invariant");
  }
  if (S.empty()) return Verdict::from(0.0, tol.residual_tol);
  const CMatrix AQ = A * S.basis();
  const CMatrix leak = AQ - S.basis() * (S.basis().adjoint() * AQ);
  return Verdict::from(opnorm(leak), tol.residual_tol);
}

Verdict is_reducing(const CMatrix& A, const Subspace& S, const Tolerance& tol) {
  const Verdict fwd = is_invariant(A, S, tol);
  const Verdict back = is_invariant(A.adjoint(), S, tol);
  return Verdict::from(std::max(fwd.residual, back.residual), tol.residual_tol);
}

}  // namespace twistdec
