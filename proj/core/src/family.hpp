#pragma once

// Internal: a finite family of vectors carried through repeated applications
// of an operator without ever truncating to the window.

#include <vector>

#include "twistdec/operator.hpp"

namespace twistdec::detail {

class Family {
 public:
  Family(const Operator& T, const CMatrix& X) : space_(T.space()) {
    if (T.materialized()) {
      dense_ = true;
      M_ = X;
    } else {
      cols_ = columns_of(X, space_);
    }
  }

  long size() const { return dense_ ? static_cast<long>(M_.cols()) : static_cast<long>(cols_.size()); }

  Family applied(const Operator& T, bool adj) const {
    Family f = *this;
    if (dense_) {
      f.M_ = adj ? CMatrix(T.matrix().adjoint() * M_) : CMatrix(T.matrix() * M_);
    } else {
      for (SparseVec& c : f.cols_) {
        c = adj ? T.apply_adjoint(c) : T.apply(c);
        prune(c);
      }
    }
    return f;
  }

  // Columns X Y.
  Family combined(const CMatrix& Y) const {
    Family f = *this;
    if (dense_) {
      f.M_ = M_ * Y;
      return f;
    }
    f.cols_.assign(static_cast<std::size_t>(Y.cols()), SparseVec{});
    for (Eigen::Index k = 0; k < Y.cols(); ++k)
      for (Eigen::Index j = 0; j < Y.rows(); ++j)
        if (Y(j, k) != cplx(0.0)) axpy(f.cols_[static_cast<std::size_t>(k)], Y(j, k), cols_[static_cast<std::size_t>(j)]);
    for (SparseVec& c : f.cols_) prune(c, 1e-300);
    return f;
  }

  Image image() const {
    if (dense_) return Image{M_, CMatrix(0, M_.cols()), {}};
    return assemble(cols_, space_);
  }

  const std::vector<SparseVec>& sparse() const { return cols_; }

 private:
  Space space_;
  bool dense_ = false;
  CMatrix M_;
  std::vector<SparseVec> cols_;
};

inline CMatrix stacked(const Image& img) {
  CMatrix S(img.inside.rows() + img.outside.rows(), img.inside.cols());
  S << img.inside, img.outside;
  return S;
}

inline CMatrix identity_minus(const CMatrix& G) { return CMatrix::Identity(G.rows(), G.cols()) - G; }

}  // namespace twistdec::detail
