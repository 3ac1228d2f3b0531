#include "twistdec/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace twistdec {

const char* to_string(SpaceKind kind) noexcept {
  switch (kind) {
    case SpaceKind::dense: return "dense";
    case SpaceKind::halfline: return "halfline";
    case SpaceKind::line: return "line";
    case SpaceKind::quarterplane: return "quarterplane";
    case SpaceKind::quadrant: return "quadrant";
  }
  return "?";
}

SpaceKind space_kind_from(const std::string& name) {
  for (SpaceKind k : {SpaceKind::dense, SpaceKind::halfline, SpaceKind::line,
                      SpaceKind::quarterplane, SpaceKind::quadrant}) {
    if (name == to_string(k)) return k;
  }
  fail(ErrorCode::BadParameter, "unknown space kind '" + name + "'");
}

namespace {

bool two_dimensional(SpaceKind k) { return k == SpaceKind::quarterplane || k == SpaceKind::quadrant; }

}  // namespace

std::string to_string(const Label& l, SpaceKind kind) {
  if (two_dimensional(kind)) return "e(" + std::to_string(l.i) + "," + std::to_string(l.j) + ")";
  return "e" + std::to_string(l.i);
}

Space::Space(std::vector<Component> parts) : parts_(std::move(parts)) {
  for (const Component& c : parts_) {
    if (c.extent < 0 || (c.kind != SpaceKind::dense && c.extent < 1)) {
      fail(ErrorCode::BadParameter, std::string("window/dimension must be positive for ") +
                                        to_string(c.kind));
    }
  }
  enumerate();
}

Space Space::direct_sum(const std::vector<Space>& parts) {
  std::vector<Component> all;
  for (const Space& s : parts) all.insert(all.end(), s.parts_.begin(), s.parts_.end());
  return Space(std::move(all));
}

bool Space::all_dense() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const Component& c) { return c.kind == SpaceKind::dense; });
}

void Space::enumerate() {
  labels_.clear();
  index_.clear();
  for (int p = 0; p < static_cast<int>(parts_.size()); ++p) {
    const long M = parts_[p].extent;
    switch (parts_[p].kind) {
      case SpaceKind::dense:
      case SpaceKind::halfline:
        for (long i = 0; i < M; ++i) labels_.push_back({p, i, 0});
        break;
      case SpaceKind::line:
        for (long i = -M; i <= M; ++i) labels_.push_back({p, i, 0});
        break;
      case SpaceKind::quarterplane:
        for (long i = -M; i <= M; ++i)
          for (long j = -M; j <= M; ++j)
            if (i >= 0 || j >= 0) labels_.push_back({p, i, j});
        break;
      case SpaceKind::quadrant:
        for (long i = 0; i < M; ++i)
          for (long j = 0; j < M; ++j) labels_.push_back({p, i, j});
        break;
    }
  }
  for (std::size_t k = 0; k < labels_.size(); ++k) index_.emplace(labels_[k], k);
}

std::optional<std::size_t> Space::index_of(const Label& l) const {
  auto it = index_.find(l);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Space::in_domain(const Label& l) const {
  if (l.part < 0 || l.part >= static_cast<int>(parts_.size())) return false;
  const Component& c = parts_[l.part];
  switch (c.kind) {
    case SpaceKind::dense: return l.j == 0 && l.i >= 0 && l.i < c.extent;
    case SpaceKind::halfline: return l.j == 0 && l.i >= 0;
    case SpaceKind::line: return l.j == 0;
    case SpaceKind::quarterplane: return l.i >= 0 || l.j >= 0;
    case SpaceKind::quadrant: return l.i >= 0 && l.j >= 0;
  }
  return false;
}

bool Space::in_window(const Label& l) const { return index_.count(l) != 0; }

long Space::edge_distance(const Label& l) const {
  const Component& c = parts_.at(l.part);
  const long M = c.extent;
  switch (c.kind) {
    case SpaceKind::dense: return kFar;
    case SpaceKind::halfline: return M - l.i;
    case SpaceKind::line: return M + 1 - std::labs(l.i);
    case SpaceKind::quarterplane: return M + 1 - std::max(std::labs(l.i), std::labs(l.j));
    case SpaceKind::quadrant: return M - std::max(l.i, l.j);
  }
  return 0;
}

long Space::distance(const Label& a, const Label& b) {
  if (a.part != b.part) return kFar;
  return std::max(std::labs(a.i - b.i), std::labs(a.j - b.j));
}

std::vector<std::size_t> Space::probe_order() const {
  std::vector<std::size_t> idx(labels_.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  auto key = [this](std::size_t k) {
    const Label& l = labels_[k];
    return std::labs(l.i) + std::labs(l.j);
  };
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  return idx;
}

std::vector<std::size_t> Space::interior(long guard) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < labels_.size(); ++k)
    if (edge_distance(labels_[k]) > guard) out.push_back(k);
  return out;
}

std::string Space::describe() const {
  std::string s;
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    if (p) s += " + ";
    s += std::string(to_string(parts_[p].kind)) + "(" + std::to_string(parts_[p].extent) + ")";
  }
  return s.empty() ? "empty" : s;
}

std::string Space::label_string(const Label& l) const {
  const SpaceKind kind = parts_.at(l.part).kind;
  std::string s = to_string(l, kind);
  if (parts_.size() > 1) s = "p" + std::to_string(l.part) + ":" + s;
  return s;
}

void axpy(SparseVec& y, cplx a, const SparseVec& x) {
  if (a == cplx(0.0)) return;
  for (const auto& [l, v] : x) y[l] += a * v;
}

SparseVec scaled(const SparseVec& x, cplx a) {
  SparseVec y;
  if (a == cplx(0.0)) return y;
  for (const auto& [l, v] : x) y.emplace(l, a * v);
  return y;
}

double norm(const SparseVec& x) {
  double s = 0.0;
  for (const auto& kv : x) s += std::norm(kv.second);
  return std::sqrt(s);
}

cplx inner(const SparseVec& x, const SparseVec& y) {
  cplx s = 0.0;
  const SparseVec& small = x.size() <= y.size() ? x : y;
  const SparseVec& big = x.size() <= y.size() ? y : x;
  const bool swapped = &small != &x;
  for (const auto& [l, v] : small) {
    auto it = big.find(l);
    if (it == big.end()) continue;
    s += swapped ? std::conj(it->second) * v : std::conj(v) * it->second;
  }
  return s;
}

void prune(SparseVec& x, double eps) {
  for (auto it = x.begin(); it != x.end();) {
    if (std::abs(it->second) <= eps) it = x.erase(it);
    else ++it;
  }
}

SparseVec unit(const Label& l) { return SparseVec{{l, cplx(1.0)}}; }

CVector to_window(const SparseVec& x, const Space& sp, double& outside_norm) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(sp.size()));
  double out = 0.0;
  for (const auto& [l, c] : x) {
    if (auto k = sp.index_of(l)) v(static_cast<Eigen::Index>(*k)) += c;
    else out += std::norm(c);
  }
  outside_norm = std::sqrt(out);
  return v;
}

CVector to_window(const SparseVec& x, const Space& sp) {
  double out = 0.0;
  CVector v = to_window(x, sp, out);
  if (out > 0.0) {
    for (const auto& [l, c] : x) {
      if (!sp.in_window(l) && c != cplx(0.0)) {
        fail(ErrorCode::WindowExceeded, "vector touches " + sp.label_string(l) +
                                            " outside window " + sp.describe());
      }
    }
  }
  return v;
}

SparseVec from_window(const CVector& v, const Space& sp) {
  SparseVec x;
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (v(k) != cplx(0.0)) x.emplace(sp.label(static_cast<std::size_t>(k)), v(k));
  return x;
}

}  // namespace twistdec
