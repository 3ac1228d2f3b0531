#pragma once

#include <array>
#include <cstdint>
#include <map>

#include "twistdec/decompose.hpp"
#include "twistdec/rng.hpp"

namespace twistdec::synth {

// Seeded generators of operators with known decompositions. Everything is
// built from block structure the generator records, so the expected
// subspaces are exact up to roundoff.

CMatrix kron(const CMatrix& A, const CMatrix& B);

// D = diag(w^j), P e_j = e_{j+1 mod k}, w = exp(2 pi i p / k); D P = w P D.
struct ClockShift {
  CMatrix D, P;
  cplx omega;
};
ClockShift clock_shift(int k, int p);

// Orthonormal columns of Q for the coordinate range [from, from + count).
Subspace rotated_coordinates(const CMatrix& Q, Eigen::Index from, Eigen::Index count);

struct ContractionSample {
  Operator T;
  Subspace H_u;   // from the construction
  int kind = 0;   // 0 strict, 1 nilpotent shift, 2 normalized Gaussian
};
// Q (U_k (+) C) Q* on C^n with a Haar unitary U_k and a c.n.u. C.
ContractionSample random_contraction(Rng& rng, int n);

struct PartnerSample {
  Operator T, V, U;
  Subspace H_u;
};
// T = Q (D (x) A) Q*, V = Q (P (x) B) Q*, U = w I with A a direct sum of
// unitary and strictly contractive blocks and B scalar on each block, so the
// pair is doubly twisted and the unitary part of T is known.
PartnerSample doubly_twisted_partner(Rng& rng);

struct FourBlockSample {
  Operator T1, T2, U;
  std::array<Subspace, 4> blocks;  // uu, u~u, ~uu, ~u~u
  GridMode mode = GridMode::doubly_twisted;
};
// Direct sum of four blocks (D (x) X1, P (x) X2) with diagonal X's whose
// entries are unimodular on unitary blocks and of modulus <= 0.5 otherwise;
// the last block is sometimes the nilpotent pair (D (x) N, P (x) N), which is
// twisted but not doubly twisted. Rotated by a Haar unitary.
FourBlockSample four_block_pair(Rng& rng);

struct WoldSample {
  Operator V;
  long multiplicity = 0;
  Subspace H_u, H_s;
};
// Dense unitary (+) halfline isometric weighted shifts with unimodular
// weights (+) optionally a bilateral one.
WoldSample shifts_plus_unitary(Rng& rng);

struct TruncatedSample {
  Operator R;
  std::map<int, long> index_multiset;
  Subspace H_u;
  std::map<int, Subspace> blocks;
};
// Q (U (+) truncated shifts) Q*.
TruncatedSample unitary_plus_truncated(Rng& rng);

struct CyclicSample {
  Operator T, V, U;
  int n = 0, p = 0;
  cplx c;
};
CyclicSample cyclic_sample(Rng& rng);

// Random pair (T1, T2, U) of unitaries with T1 T2 = U T2 T1.
struct UnitaryPair {
  Operator T1, T2, U;
};
UnitaryPair twisted_unitaries(Rng& rng);

}  // namespace twistdec::synth
