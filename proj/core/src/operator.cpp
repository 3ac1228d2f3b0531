#include "twistdec/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace twistdec {

class OperatorImpl {
 public:
  OperatorImpl(Space sp, std::string name) : space(std::move(sp)), name(std::move(name)) {}
  virtual ~OperatorImpl() = default;

  virtual SparseVec apply_basis(const Label& l) const = 0;
  virtual SparseVec apply_adjoint_basis(const Label& l) const = 0;
  virtual long band() const = 0;
  virtual const CMatrix* matrix() const { return nullptr; }
  virtual std::optional<WeightedShiftInfo> weighted_shift() const { return std::nullopt; }
  virtual std::optional<cplx> scalar_value() const { return std::nullopt; }
  // For adjoint-of-adjoint collapse.
  virtual const Operator* adjoint_of() const { return nullptr; }

  Space space;
  std::string name;
};

namespace {

void require_domain(const Space& sp, const Label& l, const std::string& who) {
  if (!sp.in_domain(l)) {
    fail(ErrorCode::DomainMismatch, who + ": label " + sp.label_string(l) + " not in " + sp.describe());
  }
}

class DenseImpl final : public OperatorImpl {
 public:
  DenseImpl(Space sp, CMatrix M, std::string name) : OperatorImpl(std::move(sp), std::move(name)), M_(std::move(M)) {
    const auto n = static_cast<Eigen::Index>(space.size());
    if (M_.rows() != n || M_.cols() != n) {
      fail(ErrorCode::DomainMismatch, "matrix is " + std::to_string(M_.rows()) + "x" +
                                          std::to_string(M_.cols()) + ", space has " + std::to_string(n));
    }
    if (!M_.allFinite()) fail(ErrorCode::BadParameter, "matrix has non-finite entries");
  }

  SparseVec apply_basis(const Label& l) const override { return col(M_, l); }
  SparseVec apply_adjoint_basis(const Label& l) const override {
    auto k = index(l);
    SparseVec y;
    for (Eigen::Index r = 0; r < M_.cols(); ++r) {
      const cplx v = std::conj(M_(k, r));
      if (v != cplx(0.0)) y.emplace(space.label(static_cast<std::size_t>(r)), v);
    }
    return y;
  }
  long band() const override { return 0; }
  const CMatrix* matrix() const override { return &M_; }

 private:
  Eigen::Index index(const Label& l) const {
    auto k = space.index_of(l);
    if (!k) fail(ErrorCode::DomainMismatch, "label " + space.label_string(l) + " not in " + space.describe());
    return static_cast<Eigen::Index>(*k);
  }
  SparseVec col(const CMatrix& M, const Label& l) const {
    const auto k = index(l);
    SparseVec y;
    for (Eigen::Index r = 0; r < M.rows(); ++r)
      if (M(r, k) != cplx(0.0)) y.emplace(space.label(static_cast<std::size_t>(r)), M(r, k));
    return y;
  }

  CMatrix M_;
};

class LocalImpl final : public OperatorImpl {
 public:
  LocalImpl(Space sp, ColumnFn f, long band, std::string name, std::optional<WeightedShiftInfo> ws)
      : OperatorImpl(std::move(sp), std::move(name)), f_(std::move(f)), band_(band), ws_(std::move(ws)) {
    if (band_ < 0) fail(ErrorCode::BadParameter, "band must be nonnegative");
  }

  SparseVec apply_basis(const Label& l) const override {
    require_domain(space, l, name);
    SparseVec y = f_(l);
    for (const auto& [m, v] : y) {
      (void)v;
      if (!space.in_domain(m)) {
        fail(ErrorCode::BadParameter, name + ": column " + space.label_string(l) + " leaves the index set");
      }
      if (space.parts()[m.part].kind != SpaceKind::dense && Space::distance(l, m) > band_) {
        fail(ErrorCode::BadParameter, name + ": column " + space.label_string(l) +
                                          " exceeds declared band " + std::to_string(band_));
      }
    }
    prune(y);
    return y;
  }

  // <A* e_n, e_m> = conj(<A e_m, e_n>), and only labels m within the band of
  // n can contribute.
  SparseVec apply_adjoint_basis(const Label& n) const override {
    require_domain(space, n, name);
    SparseVec y;
    for (const Label& m : neighbourhood(n)) {
      const SparseVec c = apply_basis(m);
      auto it = c.find(n);
      if (it != c.end() && it->second != cplx(0.0)) y.emplace(m, std::conj(it->second));
    }
    return y;
  }

  long band() const override { return band_; }
  std::optional<WeightedShiftInfo> weighted_shift() const override { return ws_; }

 private:
  std::vector<Label> neighbourhood(const Label& n) const {
    std::vector<Label> out;
    const Component& c = space.parts()[n.part];
    if (c.kind == SpaceKind::dense) {
      for (long i = 0; i < c.extent; ++i) out.push_back({n.part, i, 0});
      return out;
    }
    const bool planar = c.kind == SpaceKind::quarterplane || c.kind == SpaceKind::quadrant;
    const long bj = planar ? band_ : 0;
    for (long di = -band_; di <= band_; ++di)
      for (long dj = -bj; dj <= bj; ++dj) {
        Label m{n.part, n.i + di, n.j + dj};
        if (space.in_domain(m)) out.push_back(m);
      }
    return out;
  }

  ColumnFn f_;
  long band_;
  std::optional<WeightedShiftInfo> ws_;
};

class ScalarImpl final : public OperatorImpl {
 public:
  ScalarImpl(Space sp, cplx c, std::string name) : OperatorImpl(std::move(sp), std::move(name)), c_(c) {}
  SparseVec apply_basis(const Label& l) const override {
    require_domain(space, l, name);
    return c_ == cplx(0.0) ? SparseVec{} : SparseVec{{l, c_}};
  }
  SparseVec apply_adjoint_basis(const Label& l) const override {
    require_domain(space, l, name);
    return c_ == cplx(0.0) ? SparseVec{} : SparseVec{{l, std::conj(c_)}};
  }
  long band() const override { return 0; }
  std::optional<cplx> scalar_value() const override { return c_; }

 private:
  cplx c_;
};

class ComposeImpl final : public OperatorImpl {
 public:
  ComposeImpl(Operator A, Operator B)
      : OperatorImpl(A.space(), A.name() + "·" + B.name()), A_(std::move(A)), B_(std::move(B)) {}
  SparseVec apply_basis(const Label& l) const override { return A_.apply(B_.apply_basis(l)); }
  SparseVec apply_adjoint_basis(const Label& l) const override {
    return B_.apply_adjoint(A_.apply_adjoint_basis(l));
  }
  long band() const override { return A_.band() + B_.band(); }

 private:
  Operator A_, B_;
};

class AdjointImpl final : public OperatorImpl {
 public:
  explicit AdjointImpl(Operator A) : OperatorImpl(A.space(), A.name() + "*"), A_(std::move(A)) {}
  SparseVec apply_basis(const Label& l) const override { return A_.apply_adjoint_basis(l); }
  SparseVec apply_adjoint_basis(const Label& l) const override { return A_.apply_basis(l); }
  long band() const override { return A_.band(); }
  const Operator* adjoint_of() const override { return &A_; }

 private:
  Operator A_;
};

class DirectSumImpl final : public OperatorImpl {
 public:
  DirectSumImpl(Space sp, std::vector<Operator> parts, std::vector<int> offsets, std::string name)
      : OperatorImpl(std::move(sp), std::move(name)), parts_(std::move(parts)), offsets_(std::move(offsets)) {}

  SparseVec apply_basis(const Label& l) const override { return route(l, false); }
  SparseVec apply_adjoint_basis(const Label& l) const override { return route(l, true); }
  long band() const override {
    long b = 0;
    for (const Operator& p : parts_) b = std::max(b, p.band());
    return b;
  }

 private:
  SparseVec route(const Label& l, bool adj) const {
    require_domain(space, l, name);
    std::size_t k = 0;
    while (k + 1 < offsets_.size() && l.part >= offsets_[k + 1]) ++k;
    Label local = l;
    local.part -= offsets_[k];
    const SparseVec y = adj ? parts_[k].apply_adjoint_basis(local) : parts_[k].apply_basis(local);
    SparseVec out;
    for (const auto& [m, v] : y) {
      Label g = m;
      g.part += offsets_[k];
      out.emplace(g, v);
    }
    return out;
  }

  std::vector<Operator> parts_;
  std::vector<int> offsets_;
};

}  // namespace

const Space& Operator::space() const { return impl_->space; }
long Operator::band() const { return impl_->band(); }
const std::string& Operator::name() const { return impl_->name; }

const CMatrix& Operator::matrix() const {
  if (const CMatrix* M = impl_->matrix()) return *M;
  fail(ErrorCode::DomainMismatch, name() + " is not a materialized dense operator");
}

const CMatrix* Operator::materialized() const { return impl_->matrix(); }

SparseVec Operator::apply_basis(const Label& l) const { return impl_->apply_basis(l); }
SparseVec Operator::apply_adjoint_basis(const Label& l) const { return impl_->apply_adjoint_basis(l); }

SparseVec Operator::apply(const SparseVec& x) const {
  SparseVec y;
  for (const auto& [l, v] : x) axpy(y, v, impl_->apply_basis(l));
  return y;
}

SparseVec Operator::apply_adjoint(const SparseVec& x) const {
  SparseVec y;
  for (const auto& [l, v] : x) axpy(y, v, impl_->apply_adjoint_basis(l));
  return y;
}

std::optional<WeightedShiftInfo> Operator::weighted_shift() const { return impl_->weighted_shift(); }
std::optional<cplx> Operator::scalar_value() const { return impl_->scalar_value(); }

Operator Operator::dense(const CMatrix& M, std::string name) {
  if (M.rows() != M.cols()) fail(ErrorCode::DomainMismatch, "dense operator must be square");
  return dense_on(Space::dense(M.rows()), M, std::move(name));
}

Operator Operator::dense_on(const Space& sp, const CMatrix& M, std::string name) {
  if (!sp.all_dense()) fail(ErrorCode::DomainMismatch, "dense operator on non-dense space " + sp.describe());
  return Operator(std::make_shared<DenseImpl>(sp, M, std::move(name)));
}

Operator Operator::locally_finite(const Space& sp, ColumnFn column, long band, std::string name,
                                  std::optional<WeightedShiftInfo> ws) {
  return Operator(std::make_shared<LocalImpl>(sp, std::move(column), band, std::move(name), std::move(ws)));
}

Operator Operator::scalar(const Space& sp, cplx c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)I", c.real(), c.imag());
  if (sp.all_dense()) {
    const auto n = static_cast<Eigen::Index>(sp.size());
    return Operator(std::make_shared<DenseImpl>(sp, c * CMatrix::Identity(n, n), buf));
  }
  return Operator(std::make_shared<ScalarImpl>(sp, c, buf));
}

Operator adjoint(const Operator& A) {
  if (const Operator* orig = A.impl().adjoint_of()) return *orig;
  if (const CMatrix* M = A.impl().matrix()) return Operator::dense_on(A.space(), M->adjoint(), A.name() + "*");
  if (auto c = A.scalar_value()) return Operator::scalar(A.space(), std::conj(*c));
  return Operator(std::make_shared<AdjointImpl>(A));
}

Operator compose(const Operator& A, const Operator& B) {
  if (!(A.space() == B.space())) {
    fail(ErrorCode::DomainMismatch, "compose: " + A.space().describe() + " vs " + B.space().describe());
  }
  if (A.impl().matrix() && B.impl().matrix()) {
    return Operator::dense_on(A.space(), A.matrix() * B.matrix(), A.name() + "·" + B.name());
  }
  return Operator(std::make_shared<ComposeImpl>(A, B));
}

Operator power(const Operator& A, int n) {
  if (n < 0) fail(ErrorCode::BadParameter, "negative power");
  if (n == 0) return Operator::identity(A.space());
  if (A.impl().matrix()) {
    CMatrix P = A.matrix();
    for (int k = 1; k < n; ++k) P = P * A.matrix();
    return Operator::dense_on(A.space(), P, A.name() + "^" + std::to_string(n));
  }
  Operator P = A;
  for (int k = 1; k < n; ++k) P = compose(A, P);
  return P;
}

Operator direct_sum(const std::vector<Operator>& parts) {
  if (parts.empty()) fail(ErrorCode::BadParameter, "direct_sum of nothing");
  std::vector<Space> spaces;
  std::vector<int> offsets;
  std::string name;
  int off = 0;
  for (const Operator& p : parts) {
    spaces.push_back(p.space());
    offsets.push_back(off);
    off += static_cast<int>(p.space().parts().size());
    name += (name.empty() ? "" : "⊕") + p.name();
  }
  Space sp = Space::direct_sum(spaces);
  if (sp.all_dense()) {
    const auto n = static_cast<Eigen::Index>(sp.size());
    CMatrix M = CMatrix::Zero(n, n);
    Eigen::Index at = 0;
    for (const Operator& p : parts) {
      const auto k = static_cast<Eigen::Index>(p.space().size());
      M.block(at, at, k, k) = to_matrix(p);
      at += k;
    }
    return Operator::dense_on(sp, M, "(" + name + ")");
  }
  return Operator(std::make_shared<DirectSumImpl>(sp, parts, offsets, "(" + name + ")"));
}

Operator scalar_twist(const Space& sp, cplx r) {
  if (std::abs(std::abs(r) - 1.0) > 1e-12) {
    fail(ErrorCode::BadParameter, "twist scalar must have |r| = 1, got |r| = " + std::to_string(std::abs(r)));
  }
  return Operator::scalar(sp, r);
}

Operator make_dense(const CMatrix& M, std::string name) { return Operator::dense(M, std::move(name)); }

SparseVec column(const Operator& A, const Label& l) {
  if (!A.space().in_window(l)) {
    fail(ErrorCode::WindowExceeded, "column " + A.space().label_string(l) + " outside window " +
                                        A.space().describe());
  }
  return A.apply_basis(l);
}

Image assemble(const std::vector<SparseVec>& columns, const Space& sp) {
  std::map<Label, Eigen::Index> outside_index;
  std::vector<Label> outside;
  for (const SparseVec& c : columns)
    for (const auto& kv : c)
      if (!sp.in_window(kv.first) && !outside_index.count(kv.first)) {
        outside_index.emplace(kv.first, static_cast<Eigen::Index>(outside.size()));
        outside.push_back(kv.first);
      }
  Image img;
  const auto ncol = static_cast<Eigen::Index>(columns.size());
  img.inside = CMatrix::Zero(static_cast<Eigen::Index>(sp.size()), ncol);
  img.outside = CMatrix::Zero(static_cast<Eigen::Index>(outside.size()), ncol);
  for (Eigen::Index k = 0; k < ncol; ++k)
    for (const auto& [l, v] : columns[static_cast<std::size_t>(k)]) {
      if (auto r = sp.index_of(l)) img.inside(static_cast<Eigen::Index>(*r), k) += v;
      else img.outside(outside_index.at(l), k) += v;
    }
  img.outside_labels = std::move(outside);
  return img;
}

std::vector<SparseVec> columns_of(const CMatrix& X, const Space& sp) {
  std::vector<SparseVec> out;
  out.reserve(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index k = 0; k < X.cols(); ++k) out.push_back(from_window(X.col(k), sp));
  return out;
}

std::vector<SparseVec> apply_all(const Operator& A, const std::vector<SparseVec>& xs) {
  std::vector<SparseVec> out;
  out.reserve(xs.size());
  for (const SparseVec& x : xs) out.push_back(A.apply(x));
  return out;
}

std::vector<SparseVec> apply_adjoint_all(const Operator& A, const std::vector<SparseVec>& xs) {
  std::vector<SparseVec> out;
  out.reserve(xs.size());
  for (const SparseVec& x : xs) out.push_back(A.apply_adjoint(x));
  return out;
}

Image image(const Operator& A, const CMatrix& X) {
  if (X.rows() != static_cast<Eigen::Index>(A.space().size())) {
    fail(ErrorCode::AmbientMismatch, "image: coordinate count");
  }
  if (const CMatrix* M = A.impl().matrix()) return Image{(*M) * X, CMatrix(0, X.cols()), {}};
  return assemble(apply_all(A, columns_of(X, A.space())), A.space());
}

Image adjoint_image(const Operator& A, const CMatrix& X) {
  if (X.rows() != static_cast<Eigen::Index>(A.space().size())) {
    fail(ErrorCode::AmbientMismatch, "adjoint_image: coordinate count");
  }
  if (const CMatrix* M = A.impl().matrix()) return Image{M->adjoint() * X, CMatrix(0, X.cols()), {}};
  return assemble(apply_adjoint_all(A, columns_of(X, A.space())), A.space());
}

Image restriction(const Operator& A) {
  const auto n = static_cast<Eigen::Index>(A.space().size());
  if (const CMatrix* M = A.impl().matrix()) return Image{*M, CMatrix(0, n), {}};
  std::vector<SparseVec> cols;
  cols.reserve(A.space().size());
  for (const Label& l : A.space().labels()) cols.push_back(A.apply_basis(l));
  return assemble(cols, A.space());
}

CMatrix to_matrix(const Operator& A) {
  if (!A.is_dense()) fail(ErrorCode::DomainMismatch, A.name() + " lives on " + A.space().describe());
  if (const CMatrix* M = A.impl().matrix()) return *M;
  return restriction(A).inside;
}

CMatrix compress(const Operator& A, const Subspace& S, double tol) {
  if (S.ambient() != static_cast<Eigen::Index>(A.space().size())) {
    fail(ErrorCode::AmbientMismatch, "compress: subspace ambient");
  }
  const Image img = image(A, S.basis());
  const double out = img.outside_norm();
  if (out > tol) {
    fail(ErrorCode::WindowExceeded, "compress: " + A.name() + " maps the subspace out of window " +
                                        A.space().describe() + " (mass " + std::to_string(out) + ")");
  }
  return S.basis().adjoint() * img.inside;
}

std::string describe_vector(const SparseVec& x, const Space& sp, int max_terms) {
  std::string s;
  int shown = 0;
  for (const auto& [l, v] : x) {
    if (std::abs(v) == 0.0) continue;
    if (shown == max_terms) {
      s += " + ...";
      break;
    }
    char buf[64];
    if (v.imag() == 0.0) std::snprintf(buf, sizeof buf, "%.6g", v.real());
    else std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", v.real(), v.imag());
    s += (shown ? " + " : "") + std::string(buf) + " " + sp.label_string(l);
    ++shown;
  }
  return s.empty() ? "0" : s;
}

}  // namespace twistdec
