#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistdec/decompose.hpp"

namespace twistdec {

// Truncated minimal isometric dilation of a dense contraction T on C^n:
// K_N = H (+) D^N where D = ran D_T has an orthonormal basis Q_D and level k
// holds coordinates in that basis. S(h, d_1, ..., d_N) = (T h, Q_D* D_T h,
// d_1, ..., d_{N-1}); the last level is dropped, so S is isometric on vectors
// supported in levels < N only.
struct DilationSpace {
  CMatrix T;
  CMatrix defect_op;           // D_T
  CMatrix defect_basis;        // Q_D, n x d
  int depth = 0;
  CMatrix S;                   // (n + N d) square
  std::vector<double> identity_residuals;  // ||P_H S^k|_H - T^k||, k = 1..N
  Verdict exactness;
  Verdict minimal;             // span{S^k h : k <= N} = K_N
  Verdict isometric_below_top; // S isometric on levels < N

  Eigen::Index base_dim() const { return T.rows(); }
  Eigen::Index defect_dim() const { return defect_basis.cols(); }
  Eigen::Index dim() const { return S.rows(); }
  // Coordinates of level k (0 = H) inside K_N.
  Eigen::Index level_offset(int k) const { return k == 0 ? 0 : base_dim() + (k - 1) * defect_dim(); }
  // Orthonormal basis of the vectors supported in levels 0..k.
  CMatrix levels_upto(int k) const;
};

struct DilationOptions {
  // Unitary d x d applied to the defect basis; lets tests build a second,
  // differently coordinatized dilation of the same T.
  std::optional<CMatrix> defect_rotation;
};

DilationSpace minimal_isometric_dilation(const Operator& T, int depth, const Tolerance& tol = {},
                                         const DilationOptions& opt = {});

enum class ExtensionRoute { block_formula, spanning_set };

struct TwistedExtension {
  DilationSpace dilation;
  CMatrix V_ext;
  CMatrix U_ext;
  // Hypotheses on H.
  double hyp_adjoint_relation = 0.0;  // ||T*V - U V T*||
  double hyp_t_commutes = 0.0;        // ||TU - UT||
  double hyp_v_commutes = 0.0;        // ||VU - UV||
  // On vectors in levels <= N-2.
  Verdict twist_relation;             // V~ S = U~ S V~
  Verdict adjoint_relation;           // S* V~ = U~ V~ S*
  Verdict isometry;                   // ||V~ x|| = ||x||
  Verdict u_unitary;
  bool restriction_exact = false;     // V~|_H == V and U~|_H == U bit for bit
  // The other route, as a cross-check: max entry difference, or empty when
  // the spanning set was too ill-conditioned to use.
  std::optional<double> route_agreement;
  double span_condition = 0.0;
  ExtensionRoute route = ExtensionRoute::block_formula;
};

TwistedExtension twisted_extension(const Operator& T, const Operator& V, const Operator& U, int depth,
                                   const Tolerance& tol = {}, ExtensionRoute route = ExtensionRoute::block_formula,
                                   const DilationOptions& opt = {});

struct Intertwiner {
  CMatrix U_hat;
  Verdict unitary;
  Verdict intertwines_S;                  // U^ S1 = S2 U^ on levels < N
  std::optional<Verdict> intertwines_V;   // U^ V~1 = V~2 U^
  double gram_mismatch = 0.0;
};

Intertwiner dilation_intertwiner(const DilationSpace& d1, const DilationSpace& d2, const Tolerance& tol = {});
Intertwiner dilation_intertwiner(const TwistedExtension& e1, const TwistedExtension& e2, const Tolerance& tol = {});

struct UpgradeCheck {
  Verdict doubly_twisted;     // ||W*V - U V W*|| on the window, direct route
  double direct_sq = 0.0;     // ||X|_window||^2
  double algebraic_sq = 0.0;  // ||compression of the expanded X*X||
  double route_gap = 0.0;
};

// V isometry, W coisometry, V W = U W V.
UpgradeCheck coisometry_upgrade_check(const Operator& V, const Operator& W, const Operator& U,
                                      const Tolerance& tol = {});

struct DefectIndex {
  long sigma_T_star = 0;
};

DefectIndex defect_index(const Operator& T, const Tolerance& tol = {});

struct DilationWoldReport {
  TwistedExtension extension;
  WoldDecomposition wold;
  Verdict unitary_part_reduces_S;
  Verdict shift_part_reduces_S;
};

DilationWoldReport dilation_wold_reduction(const Operator& T, const Operator& V, const Operator& U, int depth,
                                           const Tolerance& tol = {});

}  // namespace twistdec
