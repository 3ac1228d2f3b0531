#include "twistdec/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "family.hpp"

namespace twistdec {

using detail::Family;
using detail::identity_minus;
using detail::stacked;

namespace {

Eigen::Index window_size(const Operator& T) { return static_cast<Eigen::Index>(T.space().size()); }

void require_ambient(const Operator& T, const Subspace& S, const char* who) {
  if (S.ambient() != window_size(T)) {
    fail(ErrorCode::AmbientMismatch, std::string(who) + ": subspace ambient " + std::to_string(S.ambient()) +
                                         " vs window of " + std::to_string(window_size(T)));
  }
}

// Exponent cap for stabilized intersections and spans.
int cap_for(Eigen::Index dim) { return 2 * static_cast<int>(std::max<Eigen::Index>(dim, 1)) + 2; }

int auto_depth(const Space& sp) {
  long d = 1;
  for (const Component& c : sp.parts())
    d = std::max(d, c.kind == SpaceKind::dense ? c.extent + 1 : 2 * c.extent + 2);
  return static_cast<int>(d);
}

Subspace in_ambient(const CMatrix& Q, const CMatrix& Y, double tol) {
  return Subspace(Q.rows(), Q * Y, tol);
}

// {Q y : ||T^m Q y|| = ||Q y|| (forward) and ||T*^m Q y|| = ||Q y|| (backward)
// for m = 1, 2, ...}; T a contraction. Iterates until the dimension stays put
// for one extra exponent and, if asked, the result reduces T.
struct Stabilized {
  CMatrix Q;
  int m_star = 0;
  std::vector<long> dims;
  Verdict reducing;
};

Stabilized norm_preserving(const Operator& T, const CMatrix& Q0, bool forward, bool backward,
                           bool require_reducing, const Tolerance& tol) {
  Stabilized out;
  CMatrix Q = Q0;
  Family F(T, Q), B(T, Q);
  const int cap = cap_for(Q0.cols());
  for (int m = 1; m <= cap; ++m) {
    const long k = static_cast<long>(Q.cols());
    Subspace Y = Subspace::full(k, tol.rank_tol);
    Family G = F, H = B;
    if (k > 0) {
      if (forward) {
        G = F.applied(T, false);
        Y = kernel_basis(identity_minus(G.image().gram()), tol, 1.0);
      }
      if (backward) {
        H = B.applied(T, true);
        Y = intersect(Y, kernel_basis(identity_minus(H.image().gram()), tol, 1.0), tol);
      }
      Q = Q * Y.basis();
      if (forward) F = G.combined(Y.basis());
      if (backward) B = H.combined(Y.basis());
    }
    out.dims.push_back(static_cast<long>(Q.cols()));
    const bool settled = m >= 2 && out.dims[m - 1] == out.dims[m - 2];
    if (!settled) continue;
    if (require_reducing) {
      out.reducing = is_reducing(T, Subspace(Q0.rows(), Q, tol.rank_tol), tol);
      if (!out.reducing.holds) continue;
    }
    out.Q = Q;
    out.m_star = m;
    return out;
  }
  fail(ErrorCode::StabilizationFailure,
       "no stable" + std::string(require_reducing ? " reducing" : "") + " subspace for " + T.name() +
           " within " + std::to_string(cap) + " exponents (last dim " + std::to_string(Q.cols()) + ")");
}

// Columns of X that T sends entirely inside the window: the coefficient
// subspace whose images have no mass beyond it.
CMatrix inside_coefficients(const Image& img, const Tolerance& tol) {
  if (img.outside.rows() == 0) return CMatrix::Identity(img.inside.cols(), img.inside.cols());
  return kernel_basis(img.outside, tol, 1.0).basis();
}

}  // namespace

Subspace interior_part(const Subspace& S, const Space& sp, long guard, const Tolerance& tol) {
  if (sp.all_dense()) return S;
  const std::vector<std::size_t> inner = sp.interior(guard);
  if (inner.size() == sp.size()) return S;
  std::vector<Eigen::Index> idx(inner.begin(), inner.end());
  return intersect(S, Subspace::coordinates(S.ambient(), idx, tol.rank_tol), tol);
}

Verdict is_invariant(const Operator& A, const Subspace& S, const Tolerance& tol, std::optional<long> guard) {
  require_ambient(A, S, "is_invariant");
  if (S.empty()) return Verdict::from(0.0, tol.residual_tol);
  if (const CMatrix* M = A.materialized()) return is_invariant(*M, S, tol);
  const Subspace inner = interior_part(S, A.space(), guard.value_or(A.band()), tol);
  if (inner.empty()) return Verdict::from(0.0, tol.residual_tol, "no interior vectors to test");
  const Image img = image(A, inner.basis());
  CMatrix leak(img.inside.rows() + img.outside.rows(), img.inside.cols());
  leak << img.inside - S.basis() * (S.basis().adjoint() * img.inside), img.outside;
  return Verdict::from(opnorm(leak), tol.residual_tol);
}

Verdict is_reducing(const Operator& A, const Subspace& S, const Tolerance& tol, std::optional<long> guard) {
  const Verdict a = is_invariant(A, S, tol, guard);
  const Verdict b = is_invariant(adjoint(A), S, tol, guard);
  return Verdict::from(std::max(a.residual, b.residual), tol.residual_tol, a.holds ? b.witness : a.witness);
}

// ---------------------------------------------------------------- canonical

CanonicalDecomposition canonical_within(const Operator& T, const Subspace& S, const Tolerance& tol) {
  require_ambient(T, S, "canonical");
  const Verdict c = is_contraction(T, tol);
  if (!c.holds) fail(ErrorCode::NotContraction, T.name() + " has norm excess " + std::to_string(c.residual));
  const Stabilized st = norm_preserving(T, S.basis(), true, true, true, tol);
  CanonicalDecomposition d;
  d.H_u = Subspace(S.ambient(), st.Q, tol.rank_tol);
  d.H_cnu = relative_complement(S, d.H_u, tol);
  d.m_star = st.m_star;
  d.dims = st.dims;
  d.reducing = st.reducing;
  d.unitary_part = species_on(T, d.H_u, tol).unitary;
  if (T.materialized()) {
    d.part_u = compress(T, d.H_u);
    d.part_cnu = compress(T, d.H_cnu);
  }
  return d;
}

CanonicalDecomposition canonical(const Operator& T, const Tolerance& tol) {
  return canonical_within(T, Subspace::full(window_size(T), tol.rank_tol), tol);
}

Subspace unitary_part_by_kernels(const Operator& T, const Subspace& S, const Tolerance& tol) {
  require_ambient(T, S, "unitary_part_by_kernels");
  const Stabilized st = norm_preserving(T, S.basis(), true, true, false, tol);
  return Subspace(S.ambient(), st.Q, tol.rank_tol);
}

Subspace cnu_part_by_ranges(const Operator& T, const Subspace& S, const Tolerance& tol) {
  require_ambient(T, S, "cnu_part_by_ranges");
  const Eigen::Index n = S.ambient();
  if (S.empty()) return S;
  const CMatrix& Q = S.basis();
  Subspace acc = Subspace::zero(n, tol.rank_tol);
  Family fwd(T, Q), back(T, Q);
  std::vector<long> dims;
  const int cap = cap_for(S.dim());
  for (int m = 1; m <= cap; ++m) {
    fwd = fwd.applied(T, false);
    back = back.applied(T, true);
    // (I - T*^m T^m) Q and (I - T^m T*^m) Q.
    Family a = fwd, b = back;
    for (int k = 0; k < m; ++k) {
      a = a.applied(T, true);
      b = b.applied(T, false);
    }
    const Image ia = a.image(), ib = b.image();
    const double out = std::max(ia.outside_norm(), ib.outside_norm());
    if (out > tol.residual_tol) {
      fail(ErrorCode::WindowExceeded, "defect range of " + T.name() + " at exponent " + std::to_string(m) +
                                          " leaves window " + T.space().describe());
    }
    CMatrix cols(n, acc.dim() + 2 * Q.cols());
    cols << acc.basis(), Q - ia.inside, Q - ib.inside;
    acc = range_basis(cols, tol, 1.0);
    dims.push_back(static_cast<long>(acc.dim()));
    if (m >= 2 && dims[m - 1] == dims[m - 2]) return acc;
  }
  fail(ErrorCode::StabilizationFailure, "defect ranges of " + T.name() + " did not settle within " +
                                            std::to_string(cap) + " exponents");
}

// --------------------------------------------------------------------- wold

WoldDecomposition wold_within(const Operator& V, const Subspace& S, int depth, const Tolerance& tol) {
  require_ambient(V, S, "wold");
  const Verdict iso = species_on(V, S, tol).isometry;
  if (!iso.holds) fail(ErrorCode::NotIsometry, V.name() + ": ||V*V - I|| = " + std::to_string(iso.residual));
  if (depth <= 0) depth = auto_depth(V.space());
  const Eigen::Index n = S.ambient();
  const CMatrix& Q = S.basis();

  WoldDecomposition w;
  w.depth = depth;
  if (S.empty()) {
    w.H_u = w.H_s = w.W = S;
    w.converged = Verdict::from(0.0, tol.residual_tol);
    return w;
  }

  Family back(V, Q);
  Subspace hu_prev;
  for (int k = 1; k <= depth + 1; ++k) {
    back = back.applied(V, true);
    const Image img = back.image();
    if (k == 1) w.W = in_ambient(Q, kernel_basis(stacked(img), tol, 1.0).basis(), tol.rank_tol);
    if (k == depth) hu_prev = in_ambient(Q, kernel_basis(identity_minus(img.gram()), tol, 1.0).basis(), tol.rank_tol);
    if (k == depth + 1) {
      w.H_u = in_ambient(Q, kernel_basis(identity_minus(img.gram()), tol, 1.0).basis(), tol.rank_tol);
      w.H_s = in_ambient(Q, kernel_basis(stacked(img), tol, 1.0).basis(), tol.rank_tol);
    }
  }
  if (depth == 0 || hu_prev.ambient() != n) hu_prev = S;
  w.multiplicity = static_cast<long>(w.W.dim());
  w.drift = projector_distance(w.H_u, hu_prev);
  w.converged = Verdict::from(w.drift, tol.residual_tol,
                              "unitary part moved by " + std::to_string(w.drift) + " between depth " +
                                  std::to_string(depth - 1) + " and " + std::to_string(depth));
  if (!w.converged.holds) {
    fail(ErrorCode::NonConvergent, V.name() + ": " + w.converged.witness + " on " + V.space().describe());
  }

  // Mutual orthogonality of V^k W, k <= depth.
  if (!w.W.empty()) {
    const auto m = w.W.dim();
    std::vector<SparseVec> all;
    Family f(V, w.W.basis());
    for (int k = 0; k <= depth; ++k) {
      if (k) f = f.applied(V, false);
      const Image img = f.image();
      const CMatrix st = stacked(img);
      // Re-expand into sparse columns over a common label set.
      for (Eigen::Index c = 0; c < st.cols(); ++c) {
        SparseVec x = from_window(img.inside.col(c), V.space());
        for (std::size_t r = 0; r < img.outside_labels.size(); ++r)
          if (img.outside(static_cast<Eigen::Index>(r), c) != cplx(0.0))
            x[img.outside_labels[r]] += img.outside(static_cast<Eigen::Index>(r), c);
        all.push_back(std::move(x));
      }
    }
    const CMatrix G = stacked(assemble(all, V.space()));
    const CMatrix gram = G.adjoint() * G;
    double worst = 0.0;
    for (Eigen::Index a = 0; a < gram.rows(); ++a)
      for (Eigen::Index b = 0; b < gram.cols(); ++b)
        if (a / m != b / m) worst = std::max(worst, std::abs(gram(a, b)));
    w.wandering_orthogonality = worst;
  }
  return w;
}

WoldDecomposition wold(const Operator& V, int depth, const Tolerance& tol) {
  return wold_within(V, Subspace::full(window_size(V), tol.rank_tol), depth, tol);
}

// ------------------------------------------------------------ halmos-wallen

namespace {

// span{T^j K : j >= 0} keeping only images that lie entirely in the window.
Subspace orbit_span(const Operator& T, bool adj, const Subspace& K, const Tolerance& tol, int cap) {
  const Eigen::Index n = K.ambient();
  Subspace acc = Subspace::zero(n, tol.rank_tol);
  if (K.empty()) return acc;
  Family cur(T, K.basis());
  long prev = -1;
  for (int j = 0; j <= cap; ++j) {
    if (j) cur = cur.applied(T, adj);
    Image img = cur.image();
    const CMatrix keep = inside_coefficients(img, tol);
    if (keep.cols() == 0) return acc;
    if (keep.cols() != img.inside.cols()) {
      cur = cur.combined(keep);
      img = cur.image();
    }
    CMatrix cols(n, acc.dim() + img.inside.cols());
    cols << acc.basis(), img.inside;
    acc = range_basis(cols, tol, 1.0);
    if (static_cast<long>(acc.dim()) == prev) return acc;
    prev = static_cast<long>(acc.dim());
  }
  fail(ErrorCode::StabilizationFailure, "orbit span of " + T.name() + " did not settle");
}

}  // namespace

HalmosWallenDecomposition halmos_wallen(const Operator& R, int depth, const Tolerance& tol) {
  if (depth <= 0) depth = auto_depth(R.space());
  const Eigen::Index n = window_size(R);
  const PowerPartialIsometry ppi = is_power_partial_isometry(R, depth, tol);
  if (!ppi.verdict.holds) {
    fail(ErrorCode::NotPowerPartialIsometry, R.name() + ": power " + std::to_string(ppi.first_failing) +
                                                 " is not a partial isometry (residual " +
                                                 std::to_string(ppi.verdict.residual) + ")");
  }
  HalmosWallenDecomposition d;
  d.depth = depth;
  const CMatrix I = CMatrix::Identity(n, n);
  // h in ran R*^n iff ||R^n h|| = ||h||, and h in ran R^n iff ||R*^n h|| = ||h||.
  const Subspace co_ranges(n, norm_preserving(R, I, true, false, false, tol).Q, tol.rank_tol);
  const Subspace ranges(n, norm_preserving(R, I, false, true, false, tol).Q, tol.rank_tol);
  const Subspace ker_adj = kernel_basis(stacked(restriction(adjoint(R))), tol, 1.0);
  const Subspace ker_r = kernel_basis(stacked(restriction(R)), tol, 1.0);
  const Subspace fwd_orbit = orbit_span(R, false, ker_adj, tol, cap_for(n));
  const Subspace back_orbit = orbit_span(R, true, ker_r, tol, cap_for(n));

  d.H_u = intersect(co_ranges, ranges, tol);
  d.H_s = intersect(co_ranges, fwd_orbit, tol);
  d.H_b = intersect(ranges, back_orbit, tol);
  d.H_t = intersect(fwd_orbit, back_orbit, tol);

  // Heads of the truncated chains: vectors of ker R* in H_t killed by R^k
  // but not by R^(k-1); each head spans a chain of length k.
  const Subspace heads = intersect(ker_adj, d.H_t, tol);
  if (!heads.empty()) {
    Family f(R, heads.basis());
    Subspace prev = Subspace::zero(heads.dim(), tol.rank_tol);
    for (int k = 1; k <= cap_for(n); ++k) {
      f = f.applied(R, false);
      const Subspace killed = kernel_basis(stacked(f.image()), tol, 1.0);
      const Subspace fresh = relative_complement(killed, prev, tol);
      if (!fresh.empty()) {
        const CMatrix H0 = heads.basis() * fresh.basis();
        CMatrix cols(n, k * H0.cols());
        Family g(R, H0);
        for (int j = 0; j < k; ++j) {
          if (j) g = g.applied(R, false);
          const Image img = g.image();
          if (img.outside_norm() > tol.residual_tol) {
            fail(ErrorCode::WindowExceeded, "truncated chain of " + R.name() + " leaves the window");
          }
          cols.middleCols(j * H0.cols(), H0.cols()) = img.inside;
        }
        d.truncated.emplace(k, range_basis(cols, tol, 1.0));
        d.index_multiset.emplace(k, static_cast<long>(fresh.dim()));
      }
      prev = killed;
      if (killed.dim() == heads.dim()) break;
    }
  }

  const std::vector<const Subspace*> parts{&d.H_u, &d.H_s, &d.H_b, &d.H_t};
  CMatrix P = CMatrix::Zero(n, n);
  for (std::size_t a = 0; a < parts.size(); ++a) {
    P += parts[a]->projector();
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      if (!parts[a]->empty() && !parts[b]->empty())
        d.orthogonality = std::max(d.orthogonality, opnorm(parts[a]->basis().adjoint() * parts[b]->basis()));
  }
  d.completeness = opnorm(P - I);
  return d;
}

// --------------------------------------------------------------------- grids

const GridBlock& GridDecomposition::block(const std::string& tag) const {
  for (const GridBlock& b : blocks)
    if (b.tag == tag) return b;
  fail(ErrorCode::BadParameter, "no grid block '" + tag + "'");
}

namespace {

void finish_grid(GridDecomposition& g, const Operator& T1, const Operator& T2, const Operator& U,
                 const Tolerance& tol) {
  const Eigen::Index n = window_size(T1);
  CMatrix P = CMatrix::Zero(n, n);
  for (std::size_t a = 0; a < g.blocks.size(); ++a) {
    GridBlock& b = g.blocks[a];
    const double r = std::max({is_reducing(T1, b.space, tol).residual, is_reducing(T2, b.space, tol).residual,
                               is_reducing(U, b.space, tol).residual});
    b.reduces = Verdict::from(r, tol.residual_tol);
    P += b.space.projector();
    for (std::size_t c = a + 1; c < g.blocks.size(); ++c)
      if (!b.space.empty() && !g.blocks[c].space.empty())
        g.orthogonality = std::max(g.orthogonality, opnorm(b.space.basis().adjoint() * g.blocks[c].space.basis()));
  }
  g.completeness = opnorm(P - CMatrix::Identity(n, n));
}

void same_space(const Operator& A, const Operator& B, const Operator& C) {
  if (!(A.space() == B.space()) || !(A.space() == C.space())) {
    fail(ErrorCode::DomainMismatch, "operators of a grid must share one space");
  }
}

}  // namespace

GridDecomposition slocinski_grid(const Operator& V1, const Operator& V2, const Operator& U, int depth,
                                 const Tolerance& tol) {
  same_space(V1, V2, U);
  const PairReport pr = pair_relations(V1, V2, U, tol);
  if (!pr.doubly_twisted.holds) {
    fail(ErrorCode::NotDoublyTwisted, "residual " + std::to_string(pr.doubly_twisted.residual) +
                                          (pr.doubly_twisted.witness.empty() ? "" : "; " + pr.doubly_twisted.witness));
  }
  const WoldDecomposition w1 = wold(V1, depth, tol);
  const WoldDecomposition a = wold_within(V2, w1.H_u, depth, tol);
  const WoldDecomposition b = wold_within(V2, w1.H_s, depth, tol);
  GridDecomposition g;
  g.kind = "slocinski";
  g.blocks = {{"uu", a.H_u, "unitary", "unitary", {}},
              {"us", a.H_s, "unitary", "shift", {}},
              {"su", b.H_u, "shift", "unitary", {}},
              {"ss", b.H_s, "shift", "shift", {}}};
  finish_grid(g, V1, V2, U, tol);
  return g;
}

GridDecomposition mixed_grid(const Operator& V, const Operator& W, const Operator& U, int depth,
                             const Tolerance& tol) {
  same_space(V, W, U);
  const Verdict v = is_isometry(V, tol), w = is_coisometry(W, tol);
  if (!v.holds || !w.holds) {
    fail(ErrorCode::SpeciesMismatch, "expected an isometry and a coisometry (residuals " +
                                         std::to_string(v.residual) + ", " + std::to_string(w.residual) + ")");
  }
  const PairReport pr = pair_relations(V, W, U, tol);
  if (!pr.twisted.holds) fail(ErrorCode::NotTwisted, "residual " + std::to_string(pr.twisted.residual));
  const Operator Ws = adjoint(W);
  const WoldDecomposition wv = wold(V, depth, tol);
  const WoldDecomposition a = wold_within(Ws, wv.H_u, depth, tol);
  const WoldDecomposition b = wold_within(Ws, wv.H_s, depth, tol);
  GridDecomposition g;
  g.kind = "mixed";
  g.blocks = {{"uu", a.H_u, "unitary", "unitary", {}},
              {"ub", a.H_s, "unitary", "co-shift", {}},
              {"su", b.H_u, "shift", "unitary", {}},
              {"sb", b.H_s, "shift", "co-shift", {}}};
  finish_grid(g, V, W, U, tol);
  return g;
}

GridDecomposition canonical_grid(const Operator& T1, const Operator& T2, const Operator& U,
                                 const CanonicalGridOptions& opt, const Tolerance& tol) {
  same_space(T1, T2, U);
  const PairReport pr = pair_relations(T1, T2, U, tol);
  const CanonicalDecomposition c1 = canonical(T1, tol);
  if (opt.mode == GridMode::doubly_twisted) {
    if (!pr.doubly_twisted.holds) {
      fail(ErrorCode::HypothesisNotMet, "pair is not doubly twisted (residual " +
                                            std::to_string(pr.doubly_twisted.residual) + ")");
    }
  } else {
    if (!pr.twisted.holds) {
      fail(ErrorCode::HypothesisNotMet, "pair is not twisted (residual " + std::to_string(pr.twisted.residual) + ")");
    }
    // The second operator's c.n.u. part is taken from its own canonical
    // decomposition.
    const CanonicalDecomposition c2 = canonical(T2, tol);
    const std::pair<const Operator*, const CanonicalDecomposition*> both[] = {{&T1, &c1}, {&T2, &c2}};
    for (int i = 0; i < 2; ++i) {
      const Subspace& cnu = both[i].second->H_cnu;
      if (cnu.empty()) continue;
      const ClassDiagnosis cd =
          class_diagnosis(*both[i].first, default_probes(*both[i].first, opt.classes, &cnu), opt.classes);
      if (!cd.c00()) {
        fail(ErrorCode::HypothesisNotMet, "c.n.u. part of T" + std::to_string(i + 1) + " diagnosed " + cd.label() +
                                              ", not C00, at depth " + std::to_string(cd.depth));
      }
    }
  }

  const CanonicalDecomposition a = canonical_within(T2, c1.H_u, tol);
  const CanonicalDecomposition b = canonical_within(T2, c1.H_cnu, tol);
  GridDecomposition g;
  g.kind = opt.mode == GridMode::doubly_twisted ? "canonical/doubly_twisted" : "canonical/c00_twisted";
  g.blocks = {{"uu", a.H_u, "unitary", "unitary", {}},
              {"u~u", a.H_cnu, "unitary", "c.n.u.", {}},
              {"~uu", b.H_u, "c.n.u.", "unitary", {}},
              {"~u~u", b.H_cnu, "c.n.u.", "c.n.u.", {}}};
  finish_grid(g, T1, T2, U, tol);

  if (opt.formula_route) {
    const Subspace full = Subspace::full(window_size(T1), tol.rank_tol);
    const Subspace u1 = unitary_part_by_kernels(T1, full, tol);
    const Subspace n1 = cnu_part_by_ranges(T1, full, tol);
    g.formula_blocks = {unitary_part_by_kernels(T2, u1, tol), cnu_part_by_ranges(T2, u1, tol),
                        unitary_part_by_kernels(T2, n1, tol), cnu_part_by_ranges(T2, n1, tol)};
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
      worst = std::max(worst, projector_distance(g.blocks[k].space, g.formula_blocks[k]));
    g.formula_agreement = worst;
  }
  return g;
}

// ---------------------------------------------------------------- reduction

ReductionReport reduction_check(const Operator& A, const std::vector<std::pair<std::string, Subspace>>& parts,
                                const Tolerance& tol) {
  ReductionReport rep;
  const Space& sp = A.space();
  const Operator As = adjoint(A);
  const std::vector<std::size_t> inner = sp.interior(A.band());
  double worst = 0.0;
  std::string first_fail;
  for (const auto& [name, S] : parts) {
    require_ambient(A, S, "reduction_check");
    PartReduction pr;
    pr.part = name;
    pr.invariant = is_invariant(A, S, tol);
    pr.adjoint_invariant = is_invariant(As, S, tol);
    pr.reducing = Verdict::from(std::max(pr.invariant.residual, pr.adjoint_invariant.residual), tol.residual_tol);
    if (!pr.reducing.holds && !S.empty()) {
      // Coordinate vectors lying in S whose image leaves S.
      for (std::size_t idx : inner) {
        const auto row = static_cast<Eigen::Index>(idx);
        if (1.0 - S.basis().row(row).squaredNorm() > 1e-12) continue;
        const Label& l = sp.label(idx);
        for (int adj = 0; adj < 2 && pr.witnesses.size() < 32; ++adj) {
          const SparseVec y = adj ? A.apply_adjoint_basis(l) : A.apply_basis(l);
          double out = 0.0;
          const CVector v = to_window(y, sp, out);
          const double leak = std::hypot(S.distance_to(v), out);
          if (leak > tol.residual_tol) {
            pr.witnesses.push_back({l, adj == 1, leak, describe_vector(y, sp)});
          }
        }
      }
      if (!pr.witnesses.empty()) {
        const ReductionWitness& w = pr.witnesses.front();
        pr.reducing.witness = A.name() + (w.adjoint ? "*" : "") + " " + sp.label_string(w.label) + " = " + w.image;
      }
      if (first_fail.empty()) first_fail = name + (pr.reducing.witness.empty() ? "" : ": " + pr.reducing.witness);
    }
    worst = std::max(worst, pr.reducing.residual);
    rep.parts.push_back(std::move(pr));
  }
  rep.all = Verdict::from(worst, tol.residual_tol, first_fail);
  return rep;
}

std::vector<std::pair<std::string, Subspace>> parts_of(const CanonicalDecomposition& d) {
  return {{"H_u", d.H_u}, {"H_cnu", d.H_cnu}};
}

std::vector<std::pair<std::string, Subspace>> parts_of(const WoldDecomposition& d) {
  return {{"H_u", d.H_u}, {"H_s", d.H_s}};
}

std::vector<std::pair<std::string, Subspace>> parts_of(const HalmosWallenDecomposition& d) {
  std::vector<std::pair<std::string, Subspace>> out{{"H_u", d.H_u}, {"H_s", d.H_s}, {"H_b", d.H_b}};
  for (const auto& [k, S] : d.truncated) out.emplace_back("H_" + std::to_string(k), S);
  return out;
}

std::vector<std::pair<std::string, Subspace>> parts_of(const GridDecomposition& d) {
  std::vector<std::pair<std::string, Subspace>> out;
  for (const GridBlock& b : d.blocks) out.emplace_back("H_" + b.tag, b.space);
  return out;
}

}  // namespace twistdec
