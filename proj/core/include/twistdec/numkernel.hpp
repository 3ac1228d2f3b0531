#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twistdec/errors.hpp"

namespace twistdec {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Tolerance {
  double rank_tol = 1e-10;      // relative singular-value cutoff
  double residual_tol = 1e-10;  // cutoff for operator-identity residuals

  void validate() const;
};

// Graded outcome of a numerical check. `tol` is the threshold `residual` was
// compared against; `witness` optionally names where the check failed.
struct Verdict {
  bool holds = false;
  double residual = 0.0;
  double tol = 0.0;
  std::string witness;

  static Verdict from(double residual, double tol, std::string witness = {}) {
    return Verdict{residual <= tol, residual, tol, std::move(witness)};
  }
};

// Subspace of C^ambient stored by an orthonormal basis (never a projector).
class Subspace {
 public:
  Subspace() = default;
  // `basis` must already be orthonormal; use span_of() for arbitrary columns.
  Subspace(Eigen::Index ambient, CMatrix basis, double tol);

  static Subspace zero(Eigen::Index ambient, double tol = 1e-10);
  static Subspace full(Eigen::Index ambient, double tol = 1e-10);
  static Subspace coordinates(Eigen::Index ambient, const std::vector<Eigen::Index>& idx,
                              double tol = 1e-10);

  Eigen::Index ambient() const { return ambient_; }
  Eigen::Index dim() const { return basis_.cols(); }
  bool empty() const { return basis_.cols() == 0; }
  const CMatrix& basis() const { return basis_; }
  double tol() const { return tol_; }

  CMatrix projector() const { return basis_ * basis_.adjoint(); }
  // ||(I - P) x|| for a vector in the ambient space.
  double distance_to(const CVector& x) const;

 private:
  Eigen::Index ambient_ = 0;
  CMatrix basis_ = CMatrix(0, 0);
  double tol_ = 1e-10;
};

// Largest singular value.
double opnorm(const CMatrix& A);
double hermitian_defect(const CMatrix& A);

CMatrix psd_sqrt(const CMatrix& A, const Tolerance& tol = {});

// Singular-value cutoff is rank_tol * max(sigma_max, floor). floor = 0 is the
// pure relative rule; expressions of the form I - X pass floor = 1 because
// their natural scale is that of the identity, not of their own largest
// singular value.
Subspace kernel_basis(const CMatrix& A, const Tolerance& tol = {}, double floor = 0.0);
Subspace range_basis(const CMatrix& A, const Tolerance& tol = {}, double floor = 0.0);
Eigen::Index numerical_rank(const CMatrix& A, const Tolerance& tol = {}, double floor = 0.0);

// Orthonormal basis of the column span of arbitrary columns.
Subspace span_of(const CMatrix& columns, Eigen::Index ambient, const Tolerance& tol = {},
                 double floor = 0.0);

Subspace intersect(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
Subspace join(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
Subspace complement(const Subspace& s, const Tolerance& tol = {});
// Part of `outer` orthogonal to `inner` (inner assumed contained in outer).
Subspace relative_complement(const Subspace& outer, const Subspace& inner,
                             const Tolerance& tol = {});

// Spectral norm of P_a - P_b.
double projector_distance(const Subspace& a, const Subspace& b);
// ||(I - P_b) Q_a||: zero iff a is contained in b.
double containment_residual(const Subspace& a, const Subspace& b);
// Largest |<q_i, q_j> - delta_ij| among the basis columns.
double orthonormality_defect(const CMatrix& Q);

Verdict is_invariant(const CMatrix& A, const Subspace& S, const Tolerance& tol = {});
Verdict is_reducing(const CMatrix& A, const Subspace& S, const Tolerance& tol = {});

}  // namespace twistdec
