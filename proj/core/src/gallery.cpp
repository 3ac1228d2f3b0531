#include "twistdec/gallery.hpp"

#include <cmath>
#include <numbers>

namespace twistdec {

cplx ipow(cplx r, long n) {
  if (n < 0) {
    const cplx p = ipow(r, -n);
    return std::abs(std::abs(r) - 1.0) < 1e-15 ? std::conj(p) : 1.0 / p;
  }
  cplx result = 1.0, base = r;
  for (unsigned long e = static_cast<unsigned long>(n); e; e >>= 1) {
    if (e & 1UL) result *= base;
    base *= base;
  }
  return result;
}

namespace {

cplx get(const Params& p, const std::string& key, cplx def) {
  auto it = p.find(key);
  return it == p.end() ? def : it->second;
}

long get_int(const Params& p, const std::string& key, long def) {
  const cplx v = get(p, key, static_cast<double>(def));
  const double r = std::round(v.real());
  if (v.imag() != 0.0 || std::abs(v.real() - r) > 1e-12) {
    fail(ErrorCode::BadParameter, key + " must be an integer");
  }
  return static_cast<long>(r);
}

long window_param(const Params& p, long def) {
  const long w = get_int(p, "window", def);
  if (w < 1) fail(ErrorCode::BadParameter, "window must be >= 1");
  return w;
}

cplx unit_param(const Params& p, const std::string& key, cplx def) {
  const cplx r = get(p, key, def);
  if (std::abs(std::abs(r) - 1.0) > 1e-12) fail(ErrorCode::BadParameter, key + " must have modulus 1");
  return r;
}

Operator diagonal(const Space& sp, std::function<cplx(long)> d, std::string name) {
  return Operator::locally_finite(
      sp, [d](const Label& l) { return SparseVec{{l, d(l.i)}}; }, 0, std::move(name));
}

// e_{i,j} -> w(i,j) e_{i+di, j+dj} on a planar index set; zero when the
// target leaves the set.
Operator planar_shift(const Space& sp, long di, long dj, std::function<cplx(long, long)> w,
                      std::string name) {
  return Operator::locally_finite(
      sp,
      [sp, di, dj, w](const Label& l) {
        Label m{l.part, l.i + di, l.j + dj};
        if (!sp.in_domain(m)) return SparseVec{};
        return SparseVec{{m, w(l.i, l.j)}};
      },
      std::max(std::labs(di), std::labs(dj)), std::move(name));
}

}  // namespace

Operator weighted_shift(const Space& sp, std::function<cplx(long)> weight, long step, std::string name) {
  if (sp.parts().size() != 1 ||
      (sp.parts()[0].kind != SpaceKind::halfline && sp.parts()[0].kind != SpaceKind::line)) {
    fail(ErrorCode::DomainMismatch, "weighted shift needs a halfline or line space");
  }
  if (step == 0) fail(ErrorCode::BadParameter, "step must be nonzero");
  if (sp.parts()[0].kind == SpaceKind::halfline && step < 0) {
    fail(ErrorCode::BadParameter, "halfline weighted shift needs step >= 1");
  }
  return Operator::locally_finite(
      sp,
      [weight, step](const Label& l) {
        const cplx w = weight(l.i);
        return w == cplx(0.0) ? SparseVec{} : SparseVec{{Label{l.part, l.i + step, 0}, w}};
      },
      std::labs(step), std::move(name), WeightedShiftInfo{weight, step});
}

CMatrix truncated_shift_matrix(int k, int block_dim) {
  if (k < 1 || block_dim < 1) fail(ErrorCode::BadParameter, "truncated shift needs k >= 1 and block_dim >= 1");
  const int n = k * block_dim;
  CMatrix R = CMatrix::Zero(n, n);
  for (int b = 0; b + 1 < k; ++b)
    for (int t = 0; t < block_dim; ++t) R((b + 1) * block_dim + t, b * block_dim + t) = 1.0;
  return R;
}

CMatrix c4_matrix(cplx a) {
  const double m = std::abs(a);
  if (!(m > 0.0 && m < 1.0)) fail(ErrorCode::BadParameter, "c4_example needs 0 < |a| < 1");
  CMatrix R = CMatrix::Zero(4, 4);
  R(0, 2) = 1.0;
  R(1, 0) = a;
  R(1, 3) = std::sqrt(1.0 - m * m);
  return R;
}

std::vector<std::string> gallery_names() {
  return {"unilateral_shift", "backward_shift",  "bilateral_shift",    "m_z",
          "s_r",              "a_r",             "m_z_alpha",          "hardy_twisted_pair",
          "hardy_doubly_twisted_pair",           "bilateral_pair",     "quarter_plane_pair",
          "twisted_bishift",  "shift_coshift_pair", "c4_example",      "truncated_shift",
          "cyclic_family"};
}

GalleryItem gallery(const std::string& name, const Params& p) {
  using std::numbers::pi;
  GalleryItem g;
  g.description = name;

  if (name == "unilateral_shift" || name == "m_z" || name == "backward_shift") {
    const Space sp = Space::halfline(window_param(p, 32));
    Operator S = weighted_shift(sp, [](long) { return cplx(1.0); }, 1, name == "m_z" ? "M_z" : "S");
    g.ops = {name == "backward_shift" ? adjoint(S) : S};
    return g;
  }
  if (name == "bilateral_shift") {
    const Space sp = Space::line(window_param(p, 32));
    g.ops = {weighted_shift(sp, [](long) { return cplx(1.0); }, 1, "B")};
    return g;
  }
  if (name == "s_r") {
    const cplx r = unit_param(p, "r", 1.0);
    const Space sp = Space::halfline(window_param(p, 32));
    g.ops = {weighted_shift(sp, [r](long n) { return ipow(r, n + 1); }, 1, "S_r")};
    g.twist = scalar_twist(sp, r);
    return g;
  }
  if (name == "a_r") {
    const cplx r = unit_param(p, "r", 1.0);
    const Space sp = Space::halfline(window_param(p, 32));
    g.ops = {diagonal(sp, [r](long n) { return ipow(r, n); }, "A_r")};
    g.twist = scalar_twist(sp, r);
    return g;
  }
  if (name == "m_z_alpha") {
    const cplx alpha = get(p, "alpha", 1.0);
    if (std::abs(alpha) > 1.0 + 1e-15) fail(ErrorCode::BadParameter, "m_z_alpha needs |alpha| <= 1");
    const Space sp = Space::halfline(window_param(p, 32));
    g.ops = {weighted_shift(sp, [alpha](long) { return alpha; }, 1, "M_z^alpha")};
    return g;
  }
  if (name == "hardy_twisted_pair") {
    const cplx r = unit_param(p, "r", 1.0);
    const Space sp = Space::halfline(window_param(p, 64));
    g.ops = {weighted_shift(sp, [r](long n) { return ipow(r, n + 1); }, 1, "S_r"),
             weighted_shift(sp, [](long) { return cplx(1.0); }, 1, "M_z")};
    g.twist = scalar_twist(sp, r);
    return g;
  }
  if (name == "hardy_doubly_twisted_pair") {
    const cplx r = unit_param(p, "r", 1.0);
    const cplx alpha = get(p, "alpha", 1.0);
    if (std::abs(alpha) > 1.0 + 1e-15) fail(ErrorCode::BadParameter, "alpha must satisfy |alpha| <= 1");
    const Space sp = Space::halfline(window_param(p, 64));
    g.ops = {diagonal(sp, [r](long n) { return ipow(r, n); }, "A_r"),
             weighted_shift(sp, [alpha](long) { return alpha; }, 1, "M_z^alpha")};
    g.twist = scalar_twist(sp, r);
    return g;
  }
  if (name == "bilateral_pair") {
    const cplx r = unit_param(p, "r", cplx(0.0, 1.0));
    const cplx lambda = get(p, "lambda", 0.5);
    if (!(std::abs(lambda) < 1.0)) fail(ErrorCode::BadParameter, "bilateral_pair needs |lambda| < 1");
    const Space sp = Space::line(window_param(p, 40));
    g.ops = {weighted_shift(sp, [r](long n) { return ipow(r, n) / 4.0; }, 1, "T1"),
             weighted_shift(sp, [lambda](long) { return lambda; }, 1, "T2")};
    g.twist = scalar_twist(sp, r);
    return g;
  }
  if (name == "quarter_plane_pair") {
    const Space sp = Space::quarterplane(window_param(p, 6));
    auto one = [](long, long) { return cplx(1.0); };
    g.ops = {planar_shift(sp, 1, 0, one, "T1"), planar_shift(sp, 0, 1, one, "T2")};
    g.twist = Operator::identity(sp);
    return g;
  }
  if (name == "twisted_bishift") {
    const cplx r = unit_param(p, "r", 1.0);
    const Space sp = Space::quadrant(window_param(p, 8));
    g.ops = {planar_shift(sp, 1, 0, [r](long, long j) { return ipow(r, j); }, "V1"),
             planar_shift(sp, 0, 1, [](long, long) { return cplx(1.0); }, "V2")};
    g.twist = scalar_twist(sp, r);
    return g;
  }
  if (name == "shift_coshift_pair") {
    const cplx r = unit_param(p, "r", 1.0);
    const Space sp = Space::quadrant(window_param(p, 8));
    g.ops = {planar_shift(sp, 1, 0, [r](long, long j) { return std::conj(ipow(r, j)); }, "V"),
             planar_shift(sp, 0, -1, [](long, long) { return cplx(1.0); }, "W")};
    g.twist = scalar_twist(sp, r);
    return g;
  }
  if (name == "c4_example") {
    g.ops = {make_dense(c4_matrix(get(p, "a", 0.5)), "R")};
    return g;
  }
  if (name == "truncated_shift") {
    const long k = get_int(p, "k", 2);
    const long d = get_int(p, "block_dim", 1);
    g.ops = {make_dense(truncated_shift_matrix(static_cast<int>(k), static_cast<int>(d)), "R'")};
    return g;
  }
  if (name == "cyclic_family") {
    const long n = get_int(p, "n", 3);
    const long q = get_int(p, "p", 1);
    const cplx c = get(p, "c", 0.5);
    if (n < 1) fail(ErrorCode::BadParameter, "cyclic_family needs n >= 1");
    if (std::abs(c) > 1.0 + 1e-15) fail(ErrorCode::BadParameter, "cyclic_family needs |c| <= 1");
    const cplx r = std::polar(1.0, 2.0 * pi * static_cast<double>(q % n) / static_cast<double>(n));
    CMatrix T = CMatrix::Zero(n, n), V = CMatrix::Zero(n, n);
    for (long k = 0; k < n; ++k) {
      // T* V e_k = conj(t_{k+1}) e_{k+1} and U V T* e_k = r conj(t_k) e_{k+1},
      // so the relation needs t_{k+1} = conj(r) t_k; r^n = 1 closes the cycle.
      T(k, k) = c * ipow(std::conj(r), k);
      V((k + 1) % n, k) = 1.0;
    }
    g.ops = {make_dense(T, "T"), make_dense(V, "V")};
    g.twist = make_dense(r * CMatrix::Identity(n, n), "rI");
    const CMatrix& U = g.twist->matrix();
    const double res = opnorm(T.adjoint() * V - U * V * T.adjoint());
    if (res > 1e-12) fail(ErrorCode::HypothesisNotMet, "cyclic family relation residual " + std::to_string(res));
    return g;
  }
  fail(ErrorCode::BadParameter, "unknown gallery example '" + name + "'");
}

}  // namespace twistdec
