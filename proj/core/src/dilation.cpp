#include "twistdec/dilation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "family.hpp"

namespace twistdec {

namespace {

CMatrix dense_of(const Operator& A, const char* role) {
  if (!A.is_dense()) {
    fail(ErrorCode::DomainMismatch, std::string(role) + " must be a dense operator, got " + A.space().describe());
  }
  return to_matrix(A);
}

double gram_defect(const CMatrix& X) {
  if (X.cols() == 0) return 0.0;
  return opnorm(X.adjoint() * X - CMatrix::Identity(X.cols(), X.cols()));
}

// Pseudo-inverse through the SVD with the usual relative cutoff.
CMatrix pinv(const CMatrix& A, const Tolerance& tol, double* cond = nullptr) {
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cut = tol.rank_tol * std::max(s.size() ? s(0) : 0.0, 1.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  double smin = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) {
      inv(i) = 1.0 / s(i);
      smin = s(i);
    }
  if (cond) *cond = smin > 0.0 ? s(0) / smin : 0.0;
  return svd.matrixV() * inv.cast<cplx>().asDiagonal() * svd.matrixU().adjoint();
}

// [E, S E, ..., S^N E] with E the embedding of H.
CMatrix krylov(const DilationSpace& d) {
  const Eigen::Index n = d.base_dim(), K = d.dim();
  CMatrix out(K, n * (d.depth + 1));
  CMatrix cur = CMatrix::Zero(K, n);
  cur.topRows(n).setIdentity();
  for (int k = 0; k <= d.depth; ++k) {
    if (k) cur = d.S * cur;
    out.middleCols(k * n, n) = cur;
  }
  return out;
}

}  // namespace

CMatrix DilationSpace::levels_upto(int k) const {
  const Eigen::Index cols = k < 0 ? 0 : base_dim() + static_cast<Eigen::Index>(k) * defect_dim();
  CMatrix X = CMatrix::Zero(dim(), cols);
  X.topRows(cols).setIdentity();
  return X;
}

DilationSpace minimal_isometric_dilation(const Operator& Top, int depth, const Tolerance& tol,
                                         const DilationOptions& opt) {
  if (depth < 1) fail(ErrorCode::BadParameter, "dilation depth must be >= 1");
  const CMatrix T = dense_of(Top, "T");
  const Verdict c = is_contraction(Top, tol);
  if (!c.holds) fail(ErrorCode::NotContraction, Top.name() + " has norm excess " + std::to_string(c.residual));
  const Eigen::Index n = T.rows();

  DilationSpace d;
  d.T = T;
  d.depth = depth;
  d.defect_op = psd_sqrt(CMatrix::Identity(n, n) - T.adjoint() * T, tol);
  d.defect_basis = range_basis(d.defect_op, tol, 1.0).basis();
  if (opt.defect_rotation) {
    const CMatrix& R = *opt.defect_rotation;
    if (R.rows() != d.defect_basis.cols() || R.cols() != R.rows() || gram_defect(R) > 1e-12) {
      fail(ErrorCode::BadParameter, "defect rotation must be a unitary of size " +
                                        std::to_string(d.defect_basis.cols()));
    }
    d.defect_basis = d.defect_basis * R;
  }
  const Eigen::Index dd = d.defect_dim();
  const Eigen::Index K = n + depth * dd;
  d.S = CMatrix::Zero(K, K);
  d.S.topLeftCorner(n, n) = T;
  if (dd > 0) {
    d.S.block(n, 0, dd, n) = d.defect_basis.adjoint() * d.defect_op;
    for (int k = 1; k < depth; ++k) d.S.block(d.level_offset(k + 1), d.level_offset(k), dd, dd).setIdentity();
  }

  CMatrix P = CMatrix::Identity(K, K), Tk = CMatrix::Identity(n, n);
  double worst = 0.0;
  for (int k = 1; k <= depth; ++k) {
    P = d.S * P;
    Tk = T * Tk;
    const double r = opnorm(P.topLeftCorner(n, n) - Tk);
    d.identity_residuals.push_back(r);
    worst = std::max(worst, r);
  }
  d.exactness = Verdict::from(worst, 1e-12);
  const Eigen::Index rank = numerical_rank(krylov(d), tol, 1.0);
  d.minimal = Verdict::from(static_cast<double>(K - rank), 0.0,
                            rank == K ? "" : "orbit of H spans " + std::to_string(rank) + " of " + std::to_string(K));
  d.isometric_below_top = Verdict::from(gram_defect(d.S * d.levels_upto(depth - 1)), tol.residual_tol);
  return d;
}

TwistedExtension twisted_extension(const Operator& Top, const Operator& Vop, const Operator& Uop, int depth,
                                   const Tolerance& tol, ExtensionRoute route, const DilationOptions& opt) {
  const CMatrix T = dense_of(Top, "T"), V = dense_of(Vop, "V"), U = dense_of(Uop, "U");
  const Eigen::Index n = T.rows();
  if (V.rows() != n || U.rows() != n) fail(ErrorCode::DomainMismatch, "T, V, U must act on one space");

  TwistedExtension e;
  e.route = route;
  e.hyp_adjoint_relation = opnorm(T.adjoint() * V - U * V * T.adjoint());
  e.hyp_t_commutes = opnorm(T * U - U * T);
  e.hyp_v_commutes = opnorm(V * U - U * V);
  const double v_iso = gram_defect(V), u_uni = std::max(gram_defect(U), gram_defect(U.adjoint()));
  const std::pair<const char*, double> hyps[] = {{"V isometry", v_iso},
                                                 {"U unitary", u_uni},
                                                 {"T*V = U V T*", e.hyp_adjoint_relation},
                                                 {"TU = UT", e.hyp_t_commutes},
                                                 {"VU = UV", e.hyp_v_commutes}};
  for (const auto& [what, r] : hyps)
    if (r > tol.residual_tol) fail(ErrorCode::HypothesisNotMet, std::string(what) + " fails, residual " + std::to_string(r));

  e.dilation = minimal_isometric_dilation(Top, depth, tol, opt);
  const DilationSpace& d = e.dilation;
  const Eigen::Index dd = d.defect_dim(), K = d.dim();
  const CMatrix& Q = d.defect_basis;
  const CMatrix& S = d.S;

  e.U_ext = CMatrix::Zero(K, K);
  e.U_ext.topLeftCorner(n, n) = U;
  const CMatrix Ud = Q.adjoint() * U * Q;
  for (int k = 1; k <= depth; ++k) e.U_ext.block(d.level_offset(k), d.level_offset(k), dd, dd) = Ud;

  // Block formula. For h with D h = Q c, level k holding c equals
  // S^k h - T^k h - sum_{0<j<k} (level j holding Q* D T^(k-j) h), and V~ of
  // S^k h is S^k U^k V h.
  CMatrix Vb = CMatrix::Zero(K, K);
  Vb.topLeftCorner(n, n) = V;
  if (dd > 0) {
    const CMatrix Dq = Q.adjoint() * d.defect_op * Q;  // invertible on the defect range
    const CMatrix H = Q * Dq.inverse();                // D^+ Q
    CMatrix SkUkVH = CMatrix::Zero(K, dd), UkV = V, TkH = H;
    std::vector<CMatrix> TpowH{H};  // T^m H
    for (int k = 1; k <= depth; ++k) {
      UkV = U * UkV;
      TkH = T * TkH;
      TpowH.push_back(TkH);
      CMatrix emb = CMatrix::Zero(K, dd);
      emb.topRows(n) = UkV * H;
      for (int s = 0; s < k; ++s) emb = S * emb;
      CMatrix block = emb;
      block.topRows(n) -= V * TkH;
      for (int j = 1; j < k; ++j)
        block -= Vb.middleCols(d.level_offset(j), dd) * (Q.adjoint() * d.defect_op * TpowH[static_cast<std::size_t>(k - j)]);
      Vb.middleCols(d.level_offset(k), dd) = block;
    }
  }

  // Spanning-set route: V~ [S^k h] = [S^k U^k V h], solved by least squares.
  const CMatrix Phi = krylov(d);
  CMatrix Psi(K, Phi.cols());
  {
    CMatrix cur = CMatrix::Zero(K, n), UkV = V;
    for (int k = 0; k <= depth; ++k) {
      if (k) UkV = U * UkV;
      cur.setZero();
      cur.topRows(n) = UkV;
      for (int s = 0; s < k; ++s) cur = S * cur;
      Psi.middleCols(k * n, n) = cur;
    }
  }
  double cond = 0.0;
  const CMatrix Vls = Psi * pinv(Phi, tol, &cond);
  e.span_condition = cond;
  const bool well_conditioned = cond > 0.0 && cond < 1.0 / std::sqrt(tol.rank_tol);
  if (route == ExtensionRoute::spanning_set) {
    if (!well_conditioned) {
      fail(ErrorCode::IllConditionedSpan, "spanning set condition number " + std::to_string(cond));
    }
    e.V_ext = Vls;
    e.route_agreement = (Vls - Vb).cwiseAbs().maxCoeff();
  } else {
    e.V_ext = Vb;
    if (well_conditioned) e.route_agreement = (Vls - Vb).cwiseAbs().maxCoeff();
  }

  const CMatrix X = d.levels_upto(std::max(0, depth - 2));
  const CMatrix& Vt = e.V_ext;
  e.twist_relation = Verdict::from(opnorm((Vt * S - e.U_ext * S * Vt) * X), 1e-10);
  e.adjoint_relation = Verdict::from(opnorm((S.adjoint() * Vt - e.U_ext * Vt * S.adjoint()) * X), 1e-10);
  e.isometry = Verdict::from(gram_defect(Vt * X), 1e-12);
  e.u_unitary = Verdict::from(std::max(gram_defect(e.U_ext), gram_defect(e.U_ext.adjoint())), tol.residual_tol);
  e.restriction_exact = Vt.topLeftCorner(n, n) == V && Vt.bottomLeftCorner(K - n, n).isZero(0.0) &&
                        e.U_ext.topLeftCorner(n, n) == U && e.U_ext.bottomLeftCorner(K - n, n).isZero(0.0);
  return e;
}

Intertwiner dilation_intertwiner(const DilationSpace& d1, const DilationSpace& d2, const Tolerance& tol) {
  if (d1.base_dim() != d2.base_dim() || d1.depth != d2.depth || d1.dim() != d2.dim()) {
    fail(ErrorCode::NotSameBase, "dilations differ in base dimension, depth or size");
  }
  const double tgap = opnorm(d1.T - d2.T);
  if (tgap > tol.residual_tol * std::max(1.0, opnorm(d1.T))) {
    fail(ErrorCode::NotSameBase, "dilated operators differ by " + std::to_string(tgap));
  }
  const CMatrix P1 = krylov(d1), P2 = krylov(d2);
  Intertwiner it;
  const CMatrix G1 = P1.adjoint() * P1, G2 = P2.adjoint() * P2;
  it.gram_mismatch = opnorm(G1 - G2);
  if (it.gram_mismatch > 1e-9 * std::max(1.0, opnorm(G1))) {
    fail(ErrorCode::SpanMismatch, "orbit Gram matrices differ by " + std::to_string(it.gram_mismatch));
  }
  it.U_hat = P2 * pinv(P1, tol);
  it.unitary = Verdict::from(std::max(gram_defect(it.U_hat), gram_defect(it.U_hat.adjoint())), 1e-9);
  const CMatrix X = d1.levels_upto(d1.depth - 1);
  it.intertwines_S = Verdict::from(opnorm((it.U_hat * d1.S - d2.S * it.U_hat) * X), 1e-9);
  return it;
}

Intertwiner dilation_intertwiner(const TwistedExtension& e1, const TwistedExtension& e2, const Tolerance& tol) {
  Intertwiner it = dilation_intertwiner(e1.dilation, e2.dilation, tol);
  it.intertwines_V = Verdict::from(opnorm(it.U_hat * e1.V_ext - e2.V_ext * it.U_hat), 1e-9);
  return it;
}

UpgradeCheck coisometry_upgrade_check(const Operator& V, const Operator& W, const Operator& U, const Tolerance& tol) {
  const Verdict v = is_isometry(V, tol), w = is_coisometry(W, tol);
  if (!v.holds || !w.holds) {
    fail(ErrorCode::SpeciesMismatch, "expected an isometry and a coisometry (residuals " + std::to_string(v.residual) +
                                         ", " + std::to_string(w.residual) + ")");
  }
  const PairReport pr = pair_relations(V, W, U, tol);
  if (!pr.twisted.holds) fail(ErrorCode::NotTwisted, "residual " + std::to_string(pr.twisted.residual));

  const Space& sp = V.space();
  std::vector<SparseVec> xcols, ecols;
  for (const Label& l : sp.labels()) {
    const SparseVec e = unit(l);
    // X = W*V - U V W*.
    const SparseVec Ve = V.apply(e), Wse = W.apply_adjoint(e);
    SparseVec x = W.apply_adjoint(Ve);
    axpy(x, -1.0, U.apply(V.apply(Wse)));
    xcols.push_back(std::move(x));
    // X*X expanded: V*WW*V - U* W V* W* V - U V* W V W* + U*U W V* V W*.
    SparseVec t = V.apply_adjoint(W.apply(W.apply_adjoint(Ve)));
    axpy(t, -1.0, U.apply_adjoint(W.apply(V.apply_adjoint(W.apply_adjoint(Ve)))));
    axpy(t, -1.0, U.apply(V.apply_adjoint(W.apply(V.apply(Wse)))));
    axpy(t, 1.0, U.apply_adjoint(U.apply(W.apply(V.apply_adjoint(V.apply(Wse))))));
    ecols.push_back(std::move(t));
  }
  UpgradeCheck out;
  const double xn = opnorm(detail::stacked(assemble(xcols, sp)));
  out.direct_sq = xn * xn;
  out.algebraic_sq = opnorm(assemble(ecols, sp).inside);
  out.route_gap = std::abs(out.direct_sq - out.algebraic_sq);
  out.doubly_twisted = Verdict::from(xn, tol.residual_tol, pr.adjoint_relation.first_violation
                                                              ? "W*V - UVW* nonzero at " +
                                                                    sp.label_string(*pr.adjoint_relation.first_violation)
                                                              : "");
  return out;
}

DefectIndex defect_index(const Operator& Top, const Tolerance& tol) {
  const CMatrix T = dense_of(Top, "T");
  const Verdict c = is_contraction(Top, tol);
  if (!c.holds) fail(ErrorCode::NotContraction, Top.name() + " has norm excess " + std::to_string(c.residual));
  const CMatrix Dstar = psd_sqrt(CMatrix::Identity(T.rows(), T.rows()) - T * T.adjoint(), tol);
  return DefectIndex{static_cast<long>(numerical_rank(Dstar, tol, 1.0))};
}

DilationWoldReport dilation_wold_reduction(const Operator& T, const Operator& V, const Operator& U, int depth,
                                           const Tolerance& tol) {
  DilationWoldReport rep;
  rep.extension = twisted_extension(T, V, U, depth, tol);
  const DilationSpace& d = rep.extension.dilation;
  rep.wold = wold(make_dense(rep.extension.V_ext, "V~"), 0, tol);
  // S drops the top level, so both parts are tested on vectors below it.
  const Subspace below(d.dim(), d.levels_upto(depth - 1), tol.rank_tol);
  auto reduces = [&](const Subspace& part) {
    const Subspace inner = intersect(part, below, tol);
    if (inner.empty()) return Verdict::from(0.0, tol.residual_tol);
    double r = 0.0;
    for (const CMatrix& A : {d.S, CMatrix(d.S.adjoint())}) {
      const CMatrix AQ = A * inner.basis();
      r = std::max(r, opnorm(AQ - part.basis() * (part.basis().adjoint() * AQ)));
    }
    return Verdict::from(r, 1e-9);
  };
  rep.unitary_part_reduces_S = reduces(rep.wold.H_u);
  rep.shift_part_reduces_S = reduces(rep.wold.H_s);
  return rep;
}

}  // namespace twistdec
