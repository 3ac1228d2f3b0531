#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistdec/operator.hpp"

namespace twistdec {

struct Species {
  Verdict isometry;
  Verdict coisometry;
  Verdict unitary;
  Verdict partial_isometry;
  Verdict contraction;
};

// All checks use exact columns over the window: isometry compares the Gram
// matrix of A restricted to the window with I, contraction takes the largest
// singular value of that restriction (an exact lower bound on ||A||, equal
// to it for dense operators).
Species species(const Operator& A, const Tolerance& tol = {});
// Same predicates for A restricted to a subspace S of the window; meaningful
// when S reduces A.
Species species_on(const Operator& A, const Subspace& S, const Tolerance& tol = {});

Verdict is_isometry(const Operator& A, const Tolerance& tol = {});
Verdict is_coisometry(const Operator& A, const Tolerance& tol = {});
Verdict is_unitary(const Operator& A, const Tolerance& tol = {});
Verdict is_partial_isometry(const Operator& A, const Tolerance& tol = {});
Verdict is_contraction(const Operator& A, const Tolerance& tol = {});

struct PowerPartialIsometry {
  Verdict verdict;
  int first_failing = 0;  // 0 when every power up to n_max passed
  std::vector<double> residuals;
};

PowerPartialIsometry is_power_partial_isometry(const Operator& A, int n_max, const Tolerance& tol = {});

struct RelationResidual {
  double max_residual = 0.0;
  std::optional<Label> first_violation;  // first window label above tolerance
  std::optional<Label> argmax;
};

struct PairReport {
  Verdict twisted;         // T1T2 = U T2T1 and both commute with U
  Verdict doubly_twisted;  // additionally T1*T2 = U* T2T1*
  Verdict t1_commutes_U;
  Verdict t2_commutes_U;
  RelationResidual twist_relation;
  RelationResidual adjoint_relation;
  RelationResidual t1_u;
  RelationResidual t2_u;
};

// Per-relation maximum column residual over the window labels.
PairReport pair_relations(const Operator& T1, const Operator& T2, const Operator& U,
                          const Tolerance& tol = {});

enum class Decision { zero, one, undecided };
const char* forward_class(Decision d) noexcept;   // "C0.", "C1.", "undecided"
const char* backward_class(Decision d) noexcept;  // "C.0", "C.1", "undecided"

struct ClassOptions {
  int n_max = 64;
  double decay_tol = 1e-8;
  double decided_floor = 1e-4;
  // C1. also needs the tail to have levelled off: ||T^n h|| at n_max at least
  // this fraction of its value at n_max/2. A slow geometric decay stays
  // undecided instead of passing for C1.
  double plateau_ratio = 0.99;
  std::uint64_t seed = 0x5eedULL;
};

struct ProbeEvidence {
  std::string probe;
  std::vector<double> forward;   // ||T^n h||, n = 0..n_max
  std::vector<double> backward;  // ||T*^n h||
  bool fast_path = false;        // products of weights rather than iterates
};

struct ClassDiagnosis {
  Decision forward = Decision::undecided;
  Decision backward = Decision::undecided;
  std::vector<std::string> probes;
  int depth = 0;
  std::vector<ProbeEvidence> evidence;

  bool c00() const { return forward == Decision::zero && backward == Decision::zero; }
  std::string label() const;
};

// First 8 labels by distance from the origin plus 4 seeded random unit
// vectors supported where n_max steps of the band stay inside the window.
// With `within`, the probes are projected onto that subspace instead.
std::vector<SparseVec> default_probes(const Operator& A, const ClassOptions& opt,
                                      const Subspace* within = nullptr);

ClassDiagnosis class_diagnosis(const Operator& A, const std::vector<SparseVec>& probes,
                               const ClassOptions& opt = {});
ClassDiagnosis class_diagnosis(const Operator& A, const ClassOptions& opt = {});

}  // namespace twistdec
