#include "twistdec/classify.hpp"

#include <algorithm>
#include <cmath>

#include "twistdec/rng.hpp"

namespace twistdec {

namespace {

CMatrix stacked(const Image& img) {
  CMatrix S(img.inside.rows() + img.outside.rows(), img.inside.cols());
  S << img.inside, img.outside;
  return S;
}

double gram_defect(const Image& img) {
  const CMatrix G = img.gram();
  return opnorm(G - CMatrix::Identity(G.rows(), G.cols()));
}

}  // namespace

Verdict is_isometry(const Operator& A, const Tolerance& tol) {
  return Verdict::from(gram_defect(restriction(A)), tol.residual_tol);
}

Verdict is_coisometry(const Operator& A, const Tolerance& tol) {
  return Verdict::from(gram_defect(restriction(adjoint(A))), tol.residual_tol);
}

Verdict is_unitary(const Operator& A, const Tolerance& tol) {
  const Verdict a = is_isometry(A, tol), b = is_coisometry(A, tol);
  return Verdict::from(std::max(a.residual, b.residual), tol.residual_tol);
}

Verdict is_partial_isometry(const Operator& A, const Tolerance& tol) {
  if (const CMatrix* M = A.materialized()) {
    return Verdict::from(opnorm((*M) * M->adjoint() * (*M) - *M), tol.residual_tol);
  }
  std::vector<SparseVec> cols;
  cols.reserve(A.space().size());
  for (const Label& l : A.space().labels()) {
    const SparseVec c = A.apply_basis(l);
    SparseVec r = A.apply(A.apply_adjoint(c));
    axpy(r, -1.0, c);
    cols.push_back(std::move(r));
  }
  return Verdict::from(opnorm(stacked(assemble(cols, A.space()))), tol.residual_tol);
}

Verdict is_contraction(const Operator& A, const Tolerance& tol) {
  const double s = opnorm(stacked(restriction(A)));
  return Verdict::from(std::max(0.0, s - 1.0), tol.residual_tol);
}

Species species(const Operator& A, const Tolerance& tol) {
  Species s;
  s.isometry = is_isometry(A, tol);
  s.coisometry = is_coisometry(A, tol);
  s.unitary = Verdict::from(std::max(s.isometry.residual, s.coisometry.residual), tol.residual_tol);
  s.partial_isometry = is_partial_isometry(A, tol);
  s.contraction = is_contraction(A, tol);
  return s;
}

Species species_on(const Operator& A, const Subspace& S, const Tolerance& tol) {
  Species s;
  const CMatrix& Q = S.basis();
  const auto k = S.dim();
  const CMatrix I = CMatrix::Identity(k, k);
  const Image fwd = image(A, Q);
  const Image back = adjoint_image(A, Q);
  s.isometry = Verdict::from(k ? opnorm(fwd.gram() - I) : 0.0, tol.residual_tol);
  s.coisometry = Verdict::from(k ? opnorm(back.gram() - I) : 0.0, tol.residual_tol);
  s.unitary = Verdict::from(std::max(s.isometry.residual, s.coisometry.residual), tol.residual_tol);
  // A A* A - A on S, using that S reduces A.
  std::vector<SparseVec> cols;
  const std::vector<SparseVec> xs = columns_of(Q, A.space());
  for (const SparseVec& x : xs) {
    const SparseVec c = A.apply(x);
    SparseVec r = A.apply(A.apply_adjoint(c));
    axpy(r, -1.0, c);
    cols.push_back(std::move(r));
  }
  s.partial_isometry = Verdict::from(k ? opnorm(stacked(assemble(cols, A.space()))) : 0.0, tol.residual_tol);
  s.contraction = Verdict::from(k ? std::max(0.0, opnorm(stacked(fwd)) - 1.0) : 0.0, tol.residual_tol);
  return s;
}

PowerPartialIsometry is_power_partial_isometry(const Operator& A, int n_max, const Tolerance& tol) {
  if (n_max < 1) fail(ErrorCode::BadParameter, "n_max must be >= 1");
  PowerPartialIsometry out;
  double worst = 0.0;
  Operator P = A;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) P = compose(A, P);
    const Verdict v = is_partial_isometry(P, tol);
    out.residuals.push_back(v.residual);
    worst = std::max(worst, v.residual);
    if (!v.holds && out.first_failing == 0) out.first_failing = n;
  }
  out.verdict = Verdict::from(out.first_failing ? out.residuals[out.first_failing - 1] : worst, tol.residual_tol);
  if (out.first_failing) out.verdict.witness = "power " + std::to_string(out.first_failing) + " is not a partial isometry";
  return out;
}

namespace {

// Max over window labels of ||(L - R) e_l||, with L and R given as column maps.
template <class Left, class Right>
RelationResidual relation(const Space& sp, Left left, Right right, double tol) {
  RelationResidual r;
  for (const Label& l : sp.labels()) {
    SparseVec d = left(l);
    axpy(d, -1.0, right(l));
    const double res = norm(d);
    if (res > r.max_residual || !r.argmax) {
      if (res > r.max_residual) r.argmax = l;
      if (!r.argmax) r.argmax = l;
      r.max_residual = std::max(r.max_residual, res);
    }
    if (res > tol && !r.first_violation) r.first_violation = l;
  }
  return r;
}

RelationResidual dense_relation(const CMatrix& D, const Space& sp, double tol) {
  RelationResidual r;
  for (Eigen::Index k = 0; k < D.cols(); ++k) {
    const double res = D.col(k).norm();
    const Label& l = sp.label(static_cast<std::size_t>(k));
    if (!r.argmax || res > r.max_residual) {
      r.argmax = l;
      r.max_residual = res;
    }
    if (res > tol && !r.first_violation) r.first_violation = l;
  }
  return r;
}

std::string witness_text(const RelationResidual& r, const Space& sp, const std::string& what) {
  if (!r.first_violation) return {};
  return what + " fails at " + sp.label_string(*r.first_violation);
}

}  // namespace

PairReport pair_relations(const Operator& T1, const Operator& T2, const Operator& U, const Tolerance& tol) {
  if (!(T1.space() == T2.space()) || !(T1.space() == U.space())) {
    fail(ErrorCode::DomainMismatch, "pair_relations: operators live on different spaces");
  }
  const Verdict uu = is_unitary(U, tol);
  if (!uu.holds) fail(ErrorCode::TwistNotUnitary, "||U*U - I|| or ||UU* - I|| = " + std::to_string(uu.residual));

  const Space& sp = T1.space();
  const double t = tol.residual_tol;
  PairReport rep;
  if (T1.materialized() && T2.materialized() && U.materialized()) {
    const CMatrix &A = T1.matrix(), &B = T2.matrix(), &W = U.matrix();
    rep.twist_relation = dense_relation(A * B - W * B * A, sp, t);
    rep.adjoint_relation = dense_relation(A.adjoint() * B - W.adjoint() * B * A.adjoint(), sp, t);
    rep.t1_u = dense_relation(A * W - W * A, sp, t);
    rep.t2_u = dense_relation(B * W - W * B, sp, t);
  } else {
    rep.twist_relation = relation(
        sp, [&](const Label& l) { return T1.apply(T2.apply_basis(l)); },
        [&](const Label& l) { return U.apply(T2.apply(T1.apply_basis(l))); }, t);
    rep.adjoint_relation = relation(
        sp, [&](const Label& l) { return T1.apply_adjoint(T2.apply_basis(l)); },
        [&](const Label& l) { return U.apply_adjoint(T2.apply(T1.apply_adjoint_basis(l))); }, t);
    rep.t1_u = relation(
        sp, [&](const Label& l) { return T1.apply(U.apply_basis(l)); },
        [&](const Label& l) { return U.apply(T1.apply_basis(l)); }, t);
    rep.t2_u = relation(
        sp, [&](const Label& l) { return T2.apply(U.apply_basis(l)); },
        [&](const Label& l) { return U.apply(T2.apply_basis(l)); }, t);
  }
  rep.t1_commutes_U = Verdict::from(rep.t1_u.max_residual, t, witness_text(rep.t1_u, sp, "T1 U = U T1"));
  rep.t2_commutes_U = Verdict::from(rep.t2_u.max_residual, t, witness_text(rep.t2_u, sp, "T2 U = U T2"));
  const double tw = std::max({rep.twist_relation.max_residual, rep.t1_u.max_residual, rep.t2_u.max_residual});
  rep.twisted = Verdict::from(tw, t, witness_text(rep.twist_relation, sp, "T1 T2 = U T2 T1"));
  if (rep.twisted.witness.empty()) rep.twisted.witness = rep.t1_commutes_U.witness + rep.t2_commutes_U.witness;
  rep.doubly_twisted = Verdict::from(std::max(tw, rep.adjoint_relation.max_residual), t,
                                     witness_text(rep.adjoint_relation, sp, "T1* T2 = U* T2 T1*"));
  if (rep.doubly_twisted.witness.empty()) rep.doubly_twisted.witness = rep.twisted.witness;
  return rep;
}

const char* forward_class(Decision d) noexcept {
  switch (d) {
    case Decision::zero: return "C0.";
    case Decision::one: return "C1.";
    default: return "undecided";
  }
}

const char* backward_class(Decision d) noexcept {
  switch (d) {
    case Decision::zero: return "C.0";
    case Decision::one: return "C.1";
    default: return "undecided";
  }
}

std::string ClassDiagnosis::label() const {
  if (forward != Decision::undecided && backward != Decision::undecided) {
    return std::string("C") + (forward == Decision::zero ? "0" : "1") + (backward == Decision::zero ? "0" : "1");
  }
  return std::string(forward_class(forward)) + " " + backward_class(backward);
}

std::vector<SparseVec> default_probes(const Operator& A, const ClassOptions& opt, const Subspace* within) {
  const Space& sp = A.space();
  std::vector<SparseVec> probes;
  const long reach = static_cast<long>(opt.n_max) * std::max<long>(A.band(), 1);
  const std::vector<std::size_t> order = sp.probe_order();
  const auto n = static_cast<Eigen::Index>(sp.size());

  const std::vector<std::size_t> inner = sp.interior(reach);
  // On windowed spaces a projected probe may spread to the window edge, so
  // the subspace is first cut down to vectors supported on the interior.
  std::optional<Subspace> cut;
  if (within && !sp.all_dense()) {
    std::vector<Eigen::Index> idx(inner.begin(), inner.end());
    cut = intersect(*within, Subspace::coordinates(n, idx), Tolerance{});
    within = &*cut;
  }

  if (!within) {
    for (std::size_t k = 0; k < order.size() && probes.size() < 8; ++k) probes.push_back(unit(sp.label(order[k])));
  } else {
    for (std::size_t k = 0; k < order.size() && probes.size() < 8; ++k) {
      CVector e = CVector::Zero(n);
      e(static_cast<Eigen::Index>(order[k])) = 1.0;
      CVector p = within->basis() * (within->basis().adjoint() * e);
      if (p.norm() < 0.5) continue;
      p /= p.norm();
      SparseVec x = from_window(p, sp);
      prune(x, 1e-15);
      probes.push_back(std::move(x));
    }
  }

  Rng rng(opt.seed);
  for (int r = 0; r < 4; ++r) {
    CVector v = CVector::Zero(n);
    if (!within) {
      if (inner.empty()) {
        fail(ErrorCode::WindowExceeded, "no window labels leave room for " + std::to_string(opt.n_max) +
                                            " steps in " + sp.describe());
      }
      for (std::size_t k : inner) v(static_cast<Eigen::Index>(k)) = rng.cnormal();
    } else {
      if (within->empty()) break;
      v = within->basis() * rng.gaussian(within->dim(), 1);
    }
    v /= v.norm();
    SparseVec x = from_window(v, sp);
    prune(x, 1e-15);
    probes.push_back(std::move(x));
  }
  return probes;
}

namespace {

void require_in_window(const SparseVec& x, const Space& sp, int step, const std::string& probe) {
  for (const auto& kv : x)
    if (!sp.in_window(kv.first)) {
      fail(ErrorCode::WindowExceeded, "probe " + probe + " reaches " + sp.label_string(kv.first) +
                                          " after " + std::to_string(step) + " steps; window " + sp.describe());
    }
}

Decision decide(const std::vector<std::vector<double>>& seqs, const ClassOptions& opt) {
  bool all_decay = true, all_floor = true;
  for (const auto& s : seqs) {
    if (!(s.back() <= opt.decay_tol)) all_decay = false;
    if (!(*std::min_element(s.begin(), s.end()) > opt.decided_floor)) all_floor = false;
    if (!(s.back() >= opt.plateau_ratio * s[s.size() / 2])) all_floor = false;
  }
  if (all_decay) return Decision::zero;
  if (all_floor) return Decision::one;
  return Decision::undecided;
}

}  // namespace

ClassDiagnosis class_diagnosis(const Operator& A, const std::vector<SparseVec>& probes, const ClassOptions& opt) {
  if (probes.empty()) fail(ErrorCode::BadParameter, "class_diagnosis needs at least one probe");
  if (opt.n_max < 1) fail(ErrorCode::BadParameter, "n_max must be >= 1");
  const Space& sp = A.space();
  const auto ws = A.weighted_shift();
  ClassDiagnosis d;
  d.depth = opt.n_max;
  std::vector<std::vector<double>> fwd, back;
  for (const SparseVec& raw : probes) {
    const double nr = norm(raw);
    if (nr == 0.0) fail(ErrorCode::BadParameter, "zero probe");
    const SparseVec h = scaled(raw, 1.0 / nr);
    ProbeEvidence ev;
    ev.probe = describe_vector(h, sp, 3);
    require_in_window(h, sp, 0, ev.probe);

    if (ws && h.size() == 1) {
      // ||T^n e_l|| = prod_k |w(l + k step)|; the adjoint walks the other way.
      ev.fast_path = true;
      const Label l = h.begin()->first;
      double f = 1.0, b = 1.0;
      ev.forward.push_back(1.0);
      ev.backward.push_back(1.0);
      for (int n = 1; n <= opt.n_max; ++n) {
        const Label fl{l.part, l.i + static_cast<long>(n) * ws->step, 0};
        const Label bl{l.part, l.i - static_cast<long>(n) * ws->step, 0};
        require_in_window(SparseVec{{fl, 1.0}}, sp, n, ev.probe);
        f *= std::abs(ws->weight(l.i + static_cast<long>(n - 1) * ws->step));
        if (b != 0.0) b = sp.in_domain(bl) ? b * std::abs(ws->weight(bl.i)) : 0.0;
        ev.forward.push_back(f);
        ev.backward.push_back(b);
      }
    } else {
      SparseVec x = h, y = h;
      ev.forward.push_back(1.0);
      ev.backward.push_back(1.0);
      for (int n = 1; n <= opt.n_max; ++n) {
        x = A.apply(x);
        y = A.apply_adjoint(y);
        prune(x);
        prune(y);
        require_in_window(x, sp, n, ev.probe);
        require_in_window(y, sp, n, ev.probe);
        ev.forward.push_back(norm(x));
        ev.backward.push_back(norm(y));
      }
    }
    fwd.push_back(ev.forward);
    back.push_back(ev.backward);
    d.probes.push_back(ev.probe);
    d.evidence.push_back(std::move(ev));
  }
  d.forward = decide(fwd, opt);
  d.backward = decide(back, opt);
  return d;
}

ClassDiagnosis class_diagnosis(const Operator& A, const ClassOptions& opt) {
  return class_diagnosis(A, default_probes(A, opt), opt);
}

}  // namespace twistdec
