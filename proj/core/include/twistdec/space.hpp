#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistdec/numkernel.hpp"

namespace twistdec {

// Kinds of index sets. `quarterplane` is the lattice {(i,j) : i >= 0 or j >= 0};
// `quadrant` is Z+ x Z+.
enum class SpaceKind { dense, halfline, line, quarterplane, quadrant };

const char* to_string(SpaceKind kind) noexcept;
SpaceKind space_kind_from(const std::string& name);

// Basis label. `part` selects a direct summand; 1-D kinds use `i` only.
struct Label {
  int part = 0;
  long i = 0;
  long j = 0;

  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;
};

std::string to_string(const Label& l, SpaceKind kind);

// One direct summand. `extent` is the dimension for dense parts and the
// window radius M otherwise:
//   halfline     labels 0..M-1
//   line         labels -M..M
//   quarterplane (i,j) in the lattice with |i|,|j| <= M
//   quadrant     0 <= i,j <= M-1
struct Component {
  SpaceKind kind = SpaceKind::dense;
  long extent = 0;

  bool operator==(const Component&) const = default;
};

// Index set of an operator plus the finite analysis window on it. Operators
// act on the whole (possibly infinite) index set; the window only fixes which
// coordinates analyses range over.
class Space {
 public:
  static constexpr long kFar = std::numeric_limits<long>::max() / 4;

  Space() = default;
  explicit Space(std::vector<Component> parts);

  static Space dense(long dim) { return Space({{SpaceKind::dense, dim}}); }
  static Space halfline(long window) { return Space({{SpaceKind::halfline, window}}); }
  static Space line(long window) { return Space({{SpaceKind::line, window}}); }
  static Space quarterplane(long window) { return Space({{SpaceKind::quarterplane, window}}); }
  static Space quadrant(long window) { return Space({{SpaceKind::quadrant, window}}); }
  static Space direct_sum(const std::vector<Space>& parts);

  const std::vector<Component>& parts() const { return parts_; }
  std::size_t size() const { return labels_.size(); }
  bool all_dense() const;

  const Label& label(std::size_t idx) const { return labels_[idx]; }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const Label& l) const;

  bool in_domain(const Label& l) const;
  bool in_window(const Label& l) const;
  // Number of unit steps from l to the nearest domain label outside the
  // window (kFar for dense parts and natural boundaries).
  long edge_distance(const Label& l) const;
  // Chebyshev distance between labels of the same part (kFar across parts).
  static long distance(const Label& a, const Label& b);

  // Window labels ordered by distance from the origin, ties broken by label
  // order. Used for "first k basis labels" probe sets.
  std::vector<std::size_t> probe_order() const;
  // Indices of window labels with edge_distance > guard.
  std::vector<std::size_t> interior(long guard) const;

  std::string describe() const;
  std::string label_string(const Label& l) const;
  bool operator==(const Space& other) const { return parts_ == other.parts_; }

 private:
  void enumerate();

  std::vector<Component> parts_;
  std::vector<Label> labels_;
  std::map<Label, std::size_t> index_;
};

// Finitely supported vector over labels.
using SparseVec = std::map<Label, cplx>;

void axpy(SparseVec& y, cplx a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, cplx a);
double norm(const SparseVec& x);
cplx inner(const SparseVec& x, const SparseVec& y);  // conjugate-linear in x
void prune(SparseVec& x, double eps = 0.0);
SparseVec unit(const Label& l);

// Dense coordinates on the window; throws WindowExceeded if x has support
// outside it.
CVector to_window(const SparseVec& x, const Space& sp);
// Same, but returns the mass outside the window instead of throwing.
CVector to_window(const SparseVec& x, const Space& sp, double& outside_norm);
SparseVec from_window(const CVector& v, const Space& sp);

}  // namespace twistdec
