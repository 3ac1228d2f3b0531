#pragma once

#include <string>
#include <vector>

#include "twistdec/decompose.hpp"

namespace twistdec {

// Wandering spaces of a twisted pair of isometries and of V = V1 V2, on the
// window. Images V_i W_j are kept only where they stay inside the window, and
// the direct-sum identities are checked both ways: the pieces lie in W, and
// the interior part of W lies in their sum.
struct WanderingJoin {
  Subspace W, W1, W2;
  Subspace V1W2, V2W1;
  Operator product_V;
  CMatrix U_hat;               // on the window, maps W1 (+) V1 W2 onto V2 W1 (+) W2
  CMatrix U_hat_on_W;          // Q_W* U_hat Q_W
  double join1_residual = 0.0; // W = W1 (+) V1 W2
  double join2_residual = 0.0; // W = V2 W1 (+) W2
  double u_hat_unitarity = 0.0;
  double adjoint_image_1 = 0.0;  // V1* W = W2
  double adjoint_image_2 = 0.0;  // V2* W = W1
  Verdict joins;
  Verdict u_hat_unitary;
  Verdict adjoint_images;
};

WanderingJoin wandering_join(const Operator& V1, const Operator& V2, const Operator& U, const Tolerance& tol = {});

struct IdentityCheck {
  std::string name;
  int n = 0;
  double residual = 0.0;
};

struct PowerIdentities {
  std::vector<IdentityCheck> checks;
  Verdict all;
};

// V1 V2^n = U^n V2^n V1, V2 V1^n = U*^n V1^n V2, V1 V^n = U^n V^n V1,
// V2 V^n = U*^n V^n V2, V1* V^n = U*^(n-1) V^(n-1) V2, V2* V^n = U^n V^(n-1) V1,
// V^n = U^(n(n+1)/2) V2^n V1^n = U*^(n(n-1)/2) V1^n V2^n, for 1 <= n <= n_max.
PowerIdentities twist_power_identities(const Operator& V1, const Operator& V2, const Operator& U, int n_max,
                                       const Tolerance& tol = {});

struct JointReducing {
  WoldDecomposition product, first, second;
  Verdict parts_reduce;        // H_u(V), H_s(V) reduce V1 and V2
  Verdict unitary_containment; // H_u(V) in H_u(V_i)
  Verdict shift_containment;   // H_s(V_i) in H_s(V)
};

JointReducing joint_reducing_check(const Operator& V1, const Operator& V2, const Operator& U, int depth = 0,
                                   const Tolerance& tol = {});

struct CriterionReport {
  Verdict doubly_twisted;
  Verdict v1_keeps_w2;   // V1 W2 in W2
  Verdict v2_keeps_w1;   // V2 W1 in W1
  bool agree = false;
};

CriterionReport doubly_twisted_criterion(const Operator& V1, const Operator& V2, const Operator& U,
                                         const Tolerance& tol = {});

}  // namespace twistdec
