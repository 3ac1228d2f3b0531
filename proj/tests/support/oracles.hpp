#pragma once

// Brute-force references written independently of the library routines they
// check: plain Eigen decompositions, no shared helpers from twistdec.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Orthonormal basis of the eigenvectors of a PSD matrix with eigenvalue
// <= cutoff.
inline Mat psd_null_space(const Mat& A, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    if (es.eigenvalues()(i) <= cutoff) keep.push_back(i);
  Mat B(A.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) B.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  return B;
}

inline Mat projector(const Mat& Q) { return Q * Q.adjoint(); }

inline double spectral_norm(const Mat& A) {
  if (A.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(A).singularValues()(0);
}

inline double projector_gap(const Mat& Qa, const Mat& Qb, Eigen::Index n) {
  Mat Pa = Qa.cols() ? projector(Qa) : Mat::Zero(n, n);
  Mat Pb = Qb.cols() ? projector(Qb) : Mat::Zero(n, n);
  return spectral_norm(Pa - Pb);
}

// Unitary part of a contraction as the common kernel of I - T*^m T^m and
// I - T^m T*^m for m <= 2n. Each term is PSD, so the kernel of the sum is the
// intersection of the kernels.
inline Mat unitary_part(const Mat& T, double cutoff = 1e-9) {
  const Eigen::Index n = T.rows();
  const Mat I = Mat::Identity(n, n);
  Mat sum = Mat::Zero(n, n);
  Mat Tm = I;
  for (Eigen::Index m = 1; m <= 2 * n; ++m) {
    Tm = Tm * T;
    sum += (I - Tm.adjoint() * Tm) + (I - Tm * Tm.adjoint());
  }
  return psd_null_space(sum, cutoff * static_cast<double>(4 * n));
}

// ||A A* A - A||, zero exactly for partial isometries.
inline double partial_isometry_defect(const Mat& A) { return spectral_norm(A * A.adjoint() * A - A); }

// Products of weights of the bilateral shift e_n -> (r^n / 4) e_{n+1}, from 0.
inline double quarter_decay(int n) { return std::pow(0.25, n); }

}  // namespace oracle
