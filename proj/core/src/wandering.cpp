#include "twistdec/wandering.hpp"

#include <algorithm>
#include <cmath>

#include "family.hpp"

namespace twistdec {

using detail::stacked;

namespace {

void require_twisted_isometries(const Operator& V1, const Operator& V2, const Operator& U, const Tolerance& tol) {
  for (const Operator* V : {&V1, &V2}) {
    const Verdict iso = is_isometry(*V, tol);
    if (!iso.holds) fail(ErrorCode::NotIsometry, V->name() + ": ||V*V - I|| = " + std::to_string(iso.residual));
  }
  const PairReport pr = pair_relations(V1, V2, U, tol);
  if (!pr.twisted.holds) {
    fail(ErrorCode::NotTwisted, "residual " + std::to_string(pr.twisted.residual) +
                                    (pr.twisted.witness.empty() ? "" : "; " + pr.twisted.witness));
  }
}

Subspace wandering_space(const Operator& V, const Tolerance& tol) {
  return kernel_basis(stacked(restriction(adjoint(V))), tol, 1.0);
}

// V applied to the part of S that V keeps inside the window: returns the
// kept coefficients (as vectors of S) and their images.
struct KeptImage {
  CMatrix source;
  CMatrix image;
};

KeptImage image_inside(const Operator& V, const Subspace& S, const Tolerance& tol) {
  if (S.empty()) return {S.basis(), S.basis()};
  const Image img = image(V, S.basis());
  CMatrix keep = CMatrix::Identity(S.dim(), S.dim());
  if (img.outside.rows() > 0) keep = kernel_basis(img.outside, tol, 1.0).basis();
  return {S.basis() * keep, img.inside * keep};
}

double gram_defect(const CMatrix& X) {
  if (X.cols() == 0) return 0.0;
  return opnorm(X.adjoint() * X - CMatrix::Identity(X.cols(), X.cols()));
}

double cross(const Subspace& a, const Subspace& b) {
  if (a.empty() || b.empty()) return 0.0;
  return opnorm(a.basis().adjoint() * b.basis());
}

// a (+) b = W on the window: orthogonal pieces inside W, and the interior of
// W inside their join.
double join_residual(const Subspace& a, const Subspace& b, const Subspace& W, const Space& sp, long guard,
                     const Tolerance& tol) {
  const Subspace ab = join(a, b, tol);
  return std::max({cross(a, b), containment_residual(a, W), containment_residual(b, W),
                   containment_residual(interior_part(W, sp, guard, tol), ab)});
}

Operator upow(const Operator& U, long k) { return k >= 0 ? power(U, static_cast<int>(k)) : power(adjoint(U), static_cast<int>(-k)); }

double column_residual(const Operator& L, const Operator& R) {
  double worst = 0.0;
  for (const Label& l : L.space().labels()) {
    SparseVec d = L.apply_basis(l);
    axpy(d, -1.0, R.apply_basis(l));
    worst = std::max(worst, norm(d));
  }
  return worst;
}

}  // namespace

WanderingJoin wandering_join(const Operator& V1, const Operator& V2, const Operator& U, const Tolerance& tol) {
  require_twisted_isometries(V1, V2, U, tol);
  const Space& sp = V1.space();
  const Eigen::Index n = static_cast<Eigen::Index>(sp.size());
  const long guard = std::max(V1.band(), V2.band());
  WanderingJoin j;
  j.product_V = compose(V1, V2);
  j.W = wandering_space(j.product_V, tol);
  j.W1 = wandering_space(V1, tol);
  j.W2 = wandering_space(V2, tol);

  const KeptImage a = image_inside(V1, j.W2, tol);  // zeta_2 -> V1 zeta_2
  const KeptImage b = image_inside(V2, j.W1, tol);  // zeta_1 -> V2 zeta_1
  j.V1W2 = range_basis(a.image, tol, 1.0);
  j.V2W1 = range_basis(b.image, tol, 1.0);
  j.join1_residual = join_residual(j.W1, j.V1W2, j.W, sp, guard, tol);
  j.join2_residual = join_residual(j.V2W1, j.W2, j.W, sp, guard, tol);
  j.joins = Verdict::from(std::max(j.join1_residual, j.join2_residual), tol.residual_tol);

  // U^(zeta_1 + V1 zeta_2) = V2 zeta_1 + zeta_2 on the pieces that stay in
  // the window on both sides.
  CMatrix dom(n, b.source.cols() + a.source.cols()), tgt(n, b.source.cols() + a.source.cols());
  dom << b.source, a.image;
  tgt << b.image, a.source;
  j.U_hat = tgt * dom.adjoint();
  j.U_hat_on_W = j.W.basis().adjoint() * j.U_hat * j.W.basis();
  const Subspace tgt_span = range_basis(tgt, tol, 1.0);
  j.u_hat_unitarity = std::max({gram_defect(dom), gram_defect(tgt), containment_residual(tgt_span, j.W)});
  j.u_hat_unitary = Verdict::from(j.u_hat_unitarity, tol.residual_tol);

  auto adjoint_image_residual = [&](const Operator& V, const Subspace& target) {
    if (j.W.empty()) return containment_residual(interior_part(target, sp, guard, tol), j.W);
    // only the part of W whose image stays inside the window is compared
    const Image img = adjoint_image(V, j.W.basis());
    CMatrix inside = img.inside;
    if (img.outside.rows() > 0) inside = img.inside * kernel_basis(img.outside, tol, 1.0).basis();
    const Subspace im = range_basis(inside, tol, 1.0);
    return std::max({containment_residual(im, target),
                     containment_residual(interior_part(target, sp, guard, tol), im)});
  };
  j.adjoint_image_1 = adjoint_image_residual(V1, j.W2);
  j.adjoint_image_2 = adjoint_image_residual(V2, j.W1);
  j.adjoint_images = Verdict::from(std::max(j.adjoint_image_1, j.adjoint_image_2), tol.residual_tol);
  return j;
}

PowerIdentities twist_power_identities(const Operator& V1, const Operator& V2, const Operator& U, int n_max,
                                       const Tolerance& tol) {
  if (n_max < 1) fail(ErrorCode::BadParameter, "n_max must be >= 1");
  const PairReport pr = pair_relations(V1, V2, U, tol);
  if (!pr.twisted.holds) fail(ErrorCode::NotTwisted, "residual " + std::to_string(pr.twisted.residual));
  const Operator V = compose(V1, V2);
  const Operator V1s = adjoint(V1), V2s = adjoint(V2);
  PowerIdentities out;
  double worst = 0.0;
  for (int k = 1; k <= n_max; ++k) {
    const long m = k;
    const Operator V1k = power(V1, k), V2k = power(V2, k), Vk = power(V, k), Vk1 = power(V, k - 1);
    const std::pair<std::string, std::pair<Operator, Operator>> ids[] = {
        {"V1 V2^n = U^n V2^n V1", {compose(V1, V2k), compose(upow(U, m), compose(V2k, V1))}},
        {"V2 V1^n = U*^n V1^n V2", {compose(V2, V1k), compose(upow(U, -m), compose(V1k, V2))}},
        {"V1 V^n = U^n V^n V1", {compose(V1, Vk), compose(upow(U, m), compose(Vk, V1))}},
        {"V2 V^n = U*^n V^n V2", {compose(V2, Vk), compose(upow(U, -m), compose(Vk, V2))}},
        {"V1* V^n = U*^(n-1) V^(n-1) V2", {compose(V1s, Vk), compose(upow(U, -(m - 1)), compose(Vk1, V2))}},
        {"V2* V^n = U^n V^(n-1) V1", {compose(V2s, Vk), compose(upow(U, m), compose(Vk1, V1))}},
        {"V^n = U^(n(n+1)/2) V2^n V1^n", {Vk, compose(upow(U, m * (m + 1) / 2), compose(V2k, V1k))}},
        {"V^n = U*^(n(n-1)/2) V1^n V2^n", {Vk, compose(upow(U, -(m * (m - 1) / 2)), compose(V1k, V2k))}},
    };
    for (const auto& [name, lr] : ids) {
      const double r = column_residual(lr.first, lr.second);
      out.checks.push_back({name, k, r});
      worst = std::max(worst, r);
    }
  }
  std::string witness;
  for (const IdentityCheck& c : out.checks)
    if (c.residual > tol.residual_tol) {
      witness = c.name + " at n = " + std::to_string(c.n);
      break;
    }
  out.all = Verdict::from(worst, tol.residual_tol, witness);
  return out;
}

JointReducing joint_reducing_check(const Operator& V1, const Operator& V2, const Operator& U, int depth,
                                   const Tolerance& tol) {
  require_twisted_isometries(V1, V2, U, tol);
  JointReducing r;
  r.product = wold(compose(V1, V2), depth, tol);
  r.first = wold(V1, depth, tol);
  r.second = wold(V2, depth, tol);
  double red = 0.0;
  for (const Operator* V : {&V1, &V2})
    for (const Subspace* S : {&r.product.H_u, &r.product.H_s}) red = std::max(red, is_reducing(*V, *S, tol).residual);
  r.parts_reduce = Verdict::from(red, tol.residual_tol);
  r.unitary_containment = Verdict::from(std::max(containment_residual(r.product.H_u, r.first.H_u),
                                                 containment_residual(r.product.H_u, r.second.H_u)),
                                        tol.residual_tol);
  r.shift_containment = Verdict::from(std::max(containment_residual(r.first.H_s, r.product.H_s),
                                               containment_residual(r.second.H_s, r.product.H_s)),
                                      tol.residual_tol);
  return r;
}

CriterionReport doubly_twisted_criterion(const Operator& V1, const Operator& V2, const Operator& U,
                                         const Tolerance& tol) {
  require_twisted_isometries(V1, V2, U, tol);
  CriterionReport c;
  c.doubly_twisted = pair_relations(V1, V2, U, tol).doubly_twisted;
  c.v1_keeps_w2 = is_invariant(V1, wandering_space(V2, tol), tol);
  c.v2_keeps_w1 = is_invariant(V2, wandering_space(V1, tol), tol);
  c.agree = c.doubly_twisted.holds == c.v1_keeps_w2.holds && c.v1_keeps_w2.holds == c.v2_keeps_w1.holds;
  return c;
}

}  // namespace twistdec
