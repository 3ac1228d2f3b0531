#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistdec/operator.hpp"

namespace twistdec {

// Integer parameters are passed as real values.
using Params = std::map<std::string, cplx>;

struct GalleryItem {
  std::vector<Operator> ops;
  std::optional<Operator> twist;
  std::string description;
};

// Integer power by repeated squaring, so that e.g. i^n stays exact.
cplx ipow(cplx r, long n);

// e_n -> w(n) e_{n+step} on a 1-D space (halfline or line).
Operator weighted_shift(const Space& sp, std::function<cplx(long)> weight, long step,
                        std::string name);

// Builds a named example. Known names and their parameters (defaults in
// brackets):
//   unilateral_shift, backward_shift, bilateral_shift, m_z   window[32]
//   s_r, a_r                        r[1], window[32]
//   m_z_alpha                       alpha[1], window[32]
//   hardy_twisted_pair              r, window[64]          (S_r, M_z, rI)
//   hardy_doubly_twisted_pair       r, alpha, window[64]   (A_r, M_z^alpha, rI)
//   bilateral_pair                  r, lambda, window[40]  (T1, T2, rI) on Z
//   quarter_plane_pair              window[6]              (T1, T2, I) on the lattice
//   twisted_bishift                 r, window[8]           doubly twisted isometries on Z+^2
//   shift_coshift_pair              r, window[8]           (isometry, coisometry, rI) on Z+^2
//   c4_example                      a[0.5]
//   truncated_shift                 k[2], block_dim[1]
//   cyclic_family                   n[3], p[1], c[0.5]     (T, V, rI) with r = exp(2 pi i p/n)
GalleryItem gallery(const std::string& name, const Params& params = {});
std::vector<std::string> gallery_names();

// Dense helpers shared with the synthetic generators.
CMatrix truncated_shift_matrix(int k, int block_dim);
CMatrix c4_matrix(cplx a);

}  // namespace twistdec
