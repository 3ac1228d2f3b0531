#include "twistdec/synth.hpp"

#include <cmath>
#include <numbers>

#include "twistdec/gallery.hpp"

namespace twistdec::synth {

using std::numbers::pi;

CMatrix kron(const CMatrix& A, const CMatrix& B) {
  CMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

ClockShift clock_shift(int k, int p) {
  ClockShift cs;
  cs.omega = std::polar(1.0, 2.0 * pi * static_cast<double>(p % k) / static_cast<double>(k));
  cs.D = CMatrix::Zero(k, k);
  cs.P = CMatrix::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    cs.D(j, j) = ipow(cs.omega, j);
    cs.P((j + 1) % k, j) = 1.0;
  }
  return cs;
}

Subspace rotated_coordinates(const CMatrix& Q, Eigen::Index from, Eigen::Index count) {
  return Subspace(Q.rows(), Q.middleCols(from, count), 1e-10);
}

namespace {

CMatrix block_diag(const std::vector<CMatrix>& blocks) {
  Eigen::Index n = 0;
  for (const CMatrix& b : blocks) n += b.rows();
  CMatrix M = CMatrix::Zero(n, n);
  Eigen::Index at = 0;
  for (const CMatrix& b : blocks) {
    M.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return M;
}

CMatrix strict_contraction(Rng& rng, Eigen::Index m, double norm) {
  const CMatrix G = rng.gaussian(m, m);
  return G * (norm / opnorm(G));
}

cplx small_entry(Rng& rng) {
  const double rho = rng.uniform(0.05, 0.5);
  return std::polar(rho, rng.uniform(0.0, 2.0 * pi));
}

// Coordinates of C^k (x) (block of A) inside C^k (x) C^a, in rotated form.
Subspace tensor_block(const CMatrix& Q, int k, Eigen::Index a, const std::vector<Eigen::Index>& cols) {
  CMatrix B = CMatrix::Zero(k * a, k * static_cast<Eigen::Index>(cols.size()));
  Eigen::Index c = 0;
  for (int i = 0; i < k; ++i)
    for (Eigen::Index j : cols) B(i * a + j, c++) = 1.0;
  return Subspace(Q.rows(), Q * B, 1e-10);
}

}  // namespace

ContractionSample random_contraction(Rng& rng, int n) {
  ContractionSample s;
  const int k = rng.integer(0, n);
  const int m = n - k;
  s.kind = rng.integer(0, 2);
  CMatrix C(m, m);
  if (m > 0) {
    if (s.kind == 0) C = strict_contraction(rng, m, rng.uniform(0.3, 0.95));
    else if (s.kind == 1) C = truncated_shift_matrix(m, 1);
    else C = strict_contraction(rng, m, m == 1 ? 0.9 : 1.0);  // a unimodular 1x1 block would be unitary
  }
  std::vector<CMatrix> blocks;
  if (k > 0) blocks.push_back(rng.unitary(k));
  if (m > 0) blocks.push_back(C);
  const CMatrix Q = rng.unitary(n);
  s.T = make_dense(Q * block_diag(blocks) * Q.adjoint(), "T");
  s.H_u = rotated_coordinates(Q, 0, k);
  return s;
}

PartnerSample doubly_twisted_partner(Rng& rng) {
  const int k = rng.integer(1, 3);
  const ClockShift cs = clock_shift(k, rng.integer(0, k - 1));
  const int nblocks = rng.integer(1, 3);
  std::vector<CMatrix> A, B;
  std::vector<Eigen::Index> unitary_cols;
  Eigen::Index a = 0;
  for (int b = 0; b < nblocks; ++b) {
    const int m = rng.integer(1, 2);
    const bool unitary = rng.uniform() < 0.5;
    A.push_back(unitary ? rng.unitary(m) : strict_contraction(rng, m, rng.uniform(0.2, 0.9)));
    B.push_back(rng.cnormal() * CMatrix::Identity(m, m));
    if (unitary)
      for (int j = 0; j < m; ++j) unitary_cols.push_back(a + j);
    a += m;
  }
  const CMatrix Q = rng.unitary(k * a);
  PartnerSample s;
  s.T = make_dense(Q * kron(cs.D, block_diag(A)) * Q.adjoint(), "T");
  s.V = make_dense(Q * kron(cs.P, block_diag(B)) * Q.adjoint(), "V");
  s.U = make_dense(cs.omega * CMatrix::Identity(k * a, k * a), "U");
  s.H_u = tensor_block(Q, k, a, unitary_cols);
  return s;
}

FourBlockSample four_block_pair(Rng& rng) {
  const int k = rng.integer(1, 3);
  const ClockShift cs = clock_shift(k, rng.integer(0, k - 1));
  FourBlockSample s;
  const bool nilpotent = rng.uniform() < 0.5;
  s.mode = nilpotent ? GridMode::c00_twisted : GridMode::doubly_twisted;
  std::vector<CMatrix> X1, X2;
  std::array<std::vector<Eigen::Index>, 4> cols;
  Eigen::Index a = 0;
  for (int b = 0; b < 4; ++b) {
    const bool u1 = b < 2, u2 = b % 2 == 0;
    if (b == 3 && nilpotent) {
      X1.push_back(truncated_shift_matrix(2, 1));
      X2.push_back(truncated_shift_matrix(2, 1));
      cols[3] = {a, a + 1};
      a += 2;
      continue;
    }
    const int m = rng.integer(1, 2);
    CMatrix x1 = CMatrix::Zero(m, m), x2 = CMatrix::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      x1(j, j) = u1 ? rng.unit_phase() : small_entry(rng);
      x2(j, j) = u2 ? rng.unit_phase() : small_entry(rng);
      cols[static_cast<std::size_t>(b)].push_back(a + j);
    }
    X1.push_back(x1);
    X2.push_back(x2);
    a += m;
  }
  const CMatrix Q = rng.unitary(k * a);
  s.T1 = make_dense(Q * kron(cs.D, block_diag(X1)) * Q.adjoint(), "T1");
  s.T2 = make_dense(Q * kron(cs.P, block_diag(X2)) * Q.adjoint(), "T2");
  s.U = make_dense(cs.omega * CMatrix::Identity(k * a, k * a), "U");
  for (std::size_t b = 0; b < 4; ++b) s.blocks[b] = tensor_block(Q, k, a, cols[b]);
  return s;
}

WoldSample shifts_plus_unitary(Rng& rng) {
  const int u = rng.integer(0, 3), s = rng.integer(1, 3), bil = rng.integer(0, 1);
  std::vector<Operator> parts;
  std::vector<bool> unitary_part;
  if (u > 0) {
    parts.push_back(make_dense(rng.unitary(u), "U"));
    unitary_part.push_back(true);
  }
  auto phases = [&rng]() {
    const double a = rng.uniform(), b = rng.uniform();
    return [a, b](long n) {
      const double t = a * static_cast<double>(n) + b * static_cast<double>(n * n);
      return std::polar(1.0, 2.0 * pi * (t - std::floor(t)));
    };
  };
  for (int j = 0; j < s; ++j) {
    parts.push_back(weighted_shift(Space::halfline(10), phases(), 1, "S" + std::to_string(j)));
    unitary_part.push_back(false);
  }
  if (bil) {
    parts.push_back(weighted_shift(Space::line(6), phases(), 1, "B"));
    unitary_part.push_back(true);
  }
  WoldSample w;
  w.V = direct_sum(parts);
  w.multiplicity = s;
  std::vector<Eigen::Index> uc, sc;
  Eigen::Index at = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto size = static_cast<Eigen::Index>(parts[p].space().size());
    for (Eigen::Index i = 0; i < size; ++i) (unitary_part[p] ? uc : sc).push_back(at + i);
    at += size;
  }
  w.H_u = Subspace::coordinates(at, uc);
  w.H_s = Subspace::coordinates(at, sc);
  return w;
}

TruncatedSample unitary_plus_truncated(Rng& rng) {
  const int u = rng.integer(0, 2);
  const int nchains = rng.integer(1, 3);
  std::vector<CMatrix> blocks;
  std::vector<std::pair<int, int>> chains;  // (k, d)
  if (u > 0) blocks.push_back(rng.unitary(u));
  for (int c = 0; c < nchains; ++c) {
    const int k = rng.integer(1, 3), d = rng.integer(1, 2);
    blocks.push_back(truncated_shift_matrix(k, d));
    chains.emplace_back(k, d);
  }
  const CMatrix M = block_diag(blocks);
  const Eigen::Index n = M.rows();
  const CMatrix Q = rng.unitary(n);
  TruncatedSample s;
  s.R = make_dense(Q * M * Q.adjoint(), "R");
  s.H_u = rotated_coordinates(Q, 0, u);
  std::map<int, std::vector<Eigen::Index>> cols;
  Eigen::Index at = u;
  for (const auto& [k, d] : chains) {
    s.index_multiset[k] += d;
    for (int i = 0; i < k * d; ++i) cols[k].push_back(at + i);
    at += k * d;
  }
  for (const auto& [k, c] : cols) {
    CMatrix B(n, static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) B.col(static_cast<Eigen::Index>(i)) = Q.col(c[i]);
    s.blocks.emplace(k, Subspace(n, B, 1e-10));
  }
  return s;
}

CyclicSample cyclic_sample(Rng& rng) {
  CyclicSample s;
  s.n = rng.integer(2, 6);
  s.p = rng.integer(0, s.n - 1);
  const double rho = std::sqrt(rng.uniform());
  s.c = std::polar(rho, rng.uniform(0.0, 2.0 * pi));
  const GalleryItem g = gallery("cyclic_family", {{"n", static_cast<double>(s.n)},
                                                  {"p", static_cast<double>(s.p)},
                                                  {"c", s.c}});
  s.T = g.ops[0];
  s.V = g.ops[1];
  s.U = *g.twist;
  return s;
}

UnitaryPair twisted_unitaries(Rng& rng) {
  const int k = rng.integer(1, 3), m = rng.integer(1, 3);
  const ClockShift cs = clock_shift(k, rng.integer(0, k - 1));
  const CMatrix W = rng.unitary(m);
  CMatrix a = CMatrix::Zero(m, m), b = CMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    a(j, j) = rng.unit_phase();
    b(j, j) = rng.unit_phase();
  }
  const CMatrix Q = rng.unitary(k * m);
  UnitaryPair p;
  p.T1 = make_dense(Q * kron(cs.D, W * a * W.adjoint()) * Q.adjoint(), "T1");
  p.T2 = make_dense(Q * kron(cs.P, W * b * W.adjoint()) * Q.adjoint(), "T2");
  p.U = make_dense(cs.omega * CMatrix::Identity(k * m, k * m), "U");
  return p;
}

}  // namespace twistdec::synth
