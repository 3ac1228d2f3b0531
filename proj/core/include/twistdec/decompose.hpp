#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistdec/classify.hpp"

namespace twistdec {

// Subspaces below live in window coordinates of the operator's Space.

// Invariance of a window subspace under an operator defined on the whole
// index set. On windowed spaces only the part of S supported at edge distance
// greater than the band is tested (`guard` overrides the band); near the edge
// A S leaves the window for reasons unrelated to S. Mass that A sends beyond
// the window counts as leakage.
Verdict is_invariant(const Operator& A, const Subspace& S, const Tolerance& tol = {},
                     std::optional<long> guard = std::nullopt);
Verdict is_reducing(const Operator& A, const Subspace& S, const Tolerance& tol = {},
                    std::optional<long> guard = std::nullopt);

// S intersected with the coordinates at edge distance > guard.
Subspace interior_part(const Subspace& S, const Space& sp, long guard, const Tolerance& tol = {});

struct CanonicalDecomposition {
  Subspace H_u;
  Subspace H_cnu;
  int m_star = 0;               // exponent at which the intersection settled
  std::vector<long> dims;       // dim S_m for m = 1..m_star
  Verdict reducing;             // H_u reduces T (guarded on windows)
  Verdict unitary_part;         // T|H_u unitary
  CMatrix part_u;               // compressions; empty on windowed spaces
  CMatrix part_cnu;
};

// H_u = {h : ||T^j h|| = ||h|| = ||T*^j h|| for all j}, iterated until the
// dimension stays put for one extra exponent and the result reduces T.
CanonicalDecomposition canonical(const Operator& T, const Tolerance& tol = {});
// Same inside a subspace S assumed to reduce T; H_cnu is S minus H_u.
CanonicalDecomposition canonical_within(const Operator& T, const Subspace& S, const Tolerance& tol = {});

struct WoldDecomposition {
  Subspace H_u;
  Subspace H_s;
  Subspace W;                   // wandering subspace ker V* on the window
  long multiplicity = 0;
  int depth = 0;
  double drift = 0.0;           // ||P_{H_u(depth)} - P_{H_u(depth-1)}||
  Verdict converged;
  double wandering_orthogonality = 0.0;  // max |<V^k w, V^l w'>|, k != l <= depth
};

// depth <= 0 picks one that covers the window.
WoldDecomposition wold(const Operator& V, int depth = 0, const Tolerance& tol = {});
WoldDecomposition wold_within(const Operator& V, const Subspace& S, int depth = 0,
                              const Tolerance& tol = {});

struct HalmosWallenDecomposition {
  Subspace H_u, H_s, H_b, H_t;
  std::map<int, Subspace> truncated;       // index k -> H_k
  std::map<int, long> index_multiset;      // index k -> multiplicity
  int depth = 0;
  double orthogonality = 0.0;
  double completeness = 0.0;               // ||sum of projectors - I||
};

HalmosWallenDecomposition halmos_wallen(const Operator& R, int depth = 0, const Tolerance& tol = {});

struct GridBlock {
  std::string tag;
  Subspace space;
  std::string species1;
  std::string species2;
  Verdict reduces;    // max over T1, T2, U
};

struct GridDecomposition {
  std::string kind;
  std::vector<GridBlock> blocks;               // always four, fixed order
  std::vector<Subspace> formula_blocks;        // same order; canonical grids only
  std::optional<double> formula_agreement;     // max projector distance
  double orthogonality = 0.0;
  double completeness = 0.0;
  const GridBlock& block(const std::string& tag) const;
};

GridDecomposition slocinski_grid(const Operator& V1, const Operator& V2, const Operator& U,
                                 int depth = 0, const Tolerance& tol = {});
GridDecomposition mixed_grid(const Operator& V, const Operator& W, const Operator& U, int depth = 0,
                             const Tolerance& tol = {});

enum class GridMode { doubly_twisted, c00_twisted };

struct CanonicalGridOptions {
  GridMode mode = GridMode::doubly_twisted;
  ClassOptions classes{};
  bool formula_route = true;
};

GridDecomposition canonical_grid(const Operator& T1, const Operator& T2, const Operator& U,
                                 const CanonicalGridOptions& opt = {}, const Tolerance& tol = {});

// Kernel-intersection and range-accumulation routes used by canonical_grid,
// exposed for cross-checks. `S` restricts the computation.
Subspace unitary_part_by_kernels(const Operator& T, const Subspace& S, const Tolerance& tol = {});
Subspace cnu_part_by_ranges(const Operator& T, const Subspace& S, const Tolerance& tol = {});

struct ReductionWitness {
  Label label;
  bool adjoint = false;   // the failing image is of A* rather than A
  double leak = 0.0;
  std::string image;
};

struct PartReduction {
  std::string part;
  Verdict invariant;
  Verdict adjoint_invariant;
  Verdict reducing;
  std::vector<ReductionWitness> witnesses;  // coordinate vectors of the part that leak
};

struct ReductionReport {
  std::vector<PartReduction> parts;
  Verdict all;
};

ReductionReport reduction_check(const Operator& A, const std::vector<std::pair<std::string, Subspace>>& parts,
                                const Tolerance& tol = {});

std::vector<std::pair<std::string, Subspace>> parts_of(const CanonicalDecomposition& d);
std::vector<std::pair<std::string, Subspace>> parts_of(const WoldDecomposition& d);
std::vector<std::pair<std::string, Subspace>> parts_of(const HalmosWallenDecomposition& d);
std::vector<std::pair<std::string, Subspace>> parts_of(const GridDecomposition& d);

}  // namespace twistdec
