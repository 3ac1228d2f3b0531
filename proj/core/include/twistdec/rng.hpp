#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "twistdec/numkernel.hpp"

namespace twistdec {

// Seeded generator whose outputs do not depend on the standard library's
// distribution implementations, so reports are reproducible across builds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  cplx cnormal() { return {normal(), normal()}; }
  cplx unit_phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }
  CMatrix gaussian(Eigen::Index rows, Eigen::Index cols) {
    CMatrix G(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) G(i, j) = cnormal();
    return G;
  }
  // Haar-distributed unitary via QR with phase correction.
  CMatrix unitary(Eigen::Index n) {
    const CMatrix G = gaussian(n, n);
    Eigen::HouseholderQR<CMatrix> qr(G);
    CMatrix Q = qr.householderQ();
    const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
      const cplx d = R(k, k);
      if (std::abs(d) > 0.0) Q.col(k) *= d / std::abs(d);
    }
    return Q;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace twistdec
