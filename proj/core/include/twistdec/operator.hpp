#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistdec/numkernel.hpp"
#include "twistdec/space.hpp"

namespace twistdec {

using ColumnFn = std::function<SparseVec(const Label&)>;

// Weight data for e_n -> w(n) e_{n+step} on a single 1-D part; lets decay
// sequences be computed as products of weights.
struct WeightedShiftInfo {
  std::function<cplx(long)> weight;
  long step = 1;
};

class OperatorImpl;

// Bounded operator on the index set of a Space. Two backends hide behind one
// handle: dense matrices (all parts dense) and locally finite column maps
// with a declared band b, meaning every column A e_n is supported within
// Chebyshev distance b of n. Column evaluation is exact on the whole index
// set; the Space window only bounds what analyses look at.
class Operator {
 public:
  Operator() = default;
  explicit Operator(std::shared_ptr<const OperatorImpl> impl) : impl_(std::move(impl)) {}

  static Operator dense(const CMatrix& M, std::string name = "matrix");
  static Operator dense_on(const Space& sp, const CMatrix& M, std::string name = "matrix");
  static Operator locally_finite(const Space& sp, ColumnFn column, long band, std::string name,
                                 std::optional<WeightedShiftInfo> ws = std::nullopt);
  static Operator scalar(const Space& sp, cplx c);
  static Operator identity(const Space& sp) { return scalar(sp, 1.0); }

  bool valid() const { return static_cast<bool>(impl_); }
  const Space& space() const;
  long band() const;
  const std::string& name() const;
  // True when the space is entirely dense, so the operator is a plain matrix.
  bool is_dense() const { return space().all_dense(); }
  // Matrix for dense-backend operators; throws DomainMismatch otherwise.
  const CMatrix& matrix() const;
  // Same matrix, or null when the operator is not materialized.
  const CMatrix* materialized() const;

  SparseVec apply_basis(const Label& l) const;
  SparseVec apply_adjoint_basis(const Label& l) const;
  SparseVec apply(const SparseVec& x) const;
  SparseVec apply_adjoint(const SparseVec& x) const;

  std::optional<WeightedShiftInfo> weighted_shift() const;
  std::optional<cplx> scalar_value() const;

  const OperatorImpl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const OperatorImpl> impl_;
};

Operator adjoint(const Operator& A);
Operator compose(const Operator& A, const Operator& B);  // A after B
Operator power(const Operator& A, int n);
Operator direct_sum(const std::vector<Operator>& parts);
// r I with |r| = 1.
Operator scalar_twist(const Space& sp, cplx r);
Operator make_dense(const CMatrix& M, std::string name = "matrix");

// Public column access: the label must lie in the window.
SparseVec column(const Operator& A, const Label& l);

// Window-coordinate image of a family of window vectors: rows split into the
// window part and whatever lies beyond it. Nothing is truncated.
struct Image {
  CMatrix inside;
  CMatrix outside;
  std::vector<Label> outside_labels;

  CMatrix gram() const { return inside.adjoint() * inside + outside.adjoint() * outside; }
  double outside_norm() const { return outside.size() ? opnorm(outside) : 0.0; }
};

Image assemble(const std::vector<SparseVec>& columns, const Space& sp);
std::vector<SparseVec> columns_of(const CMatrix& X, const Space& sp);
std::vector<SparseVec> apply_all(const Operator& A, const std::vector<SparseVec>& xs);
std::vector<SparseVec> apply_adjoint_all(const Operator& A, const std::vector<SparseVec>& xs);
Image image(const Operator& A, const CMatrix& X);
Image adjoint_image(const Operator& A, const CMatrix& X);
// A restricted to the window, i.e. image(A, I).
Image restriction(const Operator& A);

// Full matrix of a dense-backend operator (any composition of dense pieces).
CMatrix to_matrix(const Operator& A);
// P_S A|_S in the basis of S. Throws WindowExceeded if A S leaves the window,
// since the compression would then silently drop mass.
CMatrix compress(const Operator& A, const Subspace& S, double tol = 1e-12);

// Per-label action, handy for reports: "e3 -> 0.5 e4".
std::string describe_vector(const SparseVec& x, const Space& sp, int max_terms = 4);

}  // namespace twistdec
