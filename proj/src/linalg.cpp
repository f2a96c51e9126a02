#include "kronewton/linalg.hpp"

#include <random>

namespace kn {

MatC mat_inverse_cint(const MatC& m0, mpfr_prec_t prec) {
  int n = static_cast<int>(m0.size());
  MatC m = m0;
  CInt one(prec), zero(prec);
  one.re = RInt::from_long(1, prec);
  MatC inv(n, std::vector<CInt>(n, zero));
  for (int i = 0; i < n; ++i) inv[i][i] = one;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = -1;
    for (int r = col; r < n; ++r) {
      RInt ns = m[r][col].norm_sq();
      if (ns.contains_zero()) continue;
      double mag = ns.lo_double();
      if (mag > best) { best = mag; piv = r; }
    }
    if (piv < 0)
      fail(Errc::inconclusive, "interval matrix inverse: no invertible pivot");
    std::swap(m[col], m[piv]);
    std::swap(inv[col], inv[piv]);
    CInt f = one / m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] = m[col][j] * f;
      inv[col][j] = inv[col][j] * f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      CInt g = m[r][col];
      if (g.contains_zero() && g.norm_sq().hi_double() == 0) continue;
      for (int j = 0; j < n; ++j) {
        m[r][j] = m[r][j] - g * m[col][j];
        inv[r][j] = inv[r][j] - g * inv[col][j];
      }
    }
  }
  return inv;
}

RInt frobenius_sq(const MatC& m, mpfr_prec_t prec) {
  RInt s(prec);
  for (const auto& row : m)
    for (const auto& x : row) s = s + x.norm_sq();
  return s;
}

std::vector<CInt> mat_vec_cint(const MatC& m, const std::vector<CInt>& v,
                               mpfr_prec_t prec) {
  std::vector<CInt> r;
  r.reserve(m.size());
  for (const auto& row : m) {
    CInt acc(prec);
    for (size_t j = 0; j < row.size(); ++j) acc = acc + row[j] * v[j];
    r.push_back(acc);
  }
  return r;
}

RInt op_norm_lb(const MatC& m, mpfr_prec_t prec, int probes, uint64_t seed) {
  int n = static_cast<int>(m[0].size());
  std::mt19937_64 rng(seed);
  RInt best(prec);  // zero
  auto probe = [&](const std::vector<CInt>& v) {
    RInt vn(prec);
    for (const auto& x : v) vn = vn + x.norm_sq();
    vn = vn.sqrt_nonneg();
    if (!vn.is_positive()) return;
    auto mv = mat_vec_cint(m, v, prec);
    RInt an(prec);
    for (const auto& x : mv) an = an + x.norm_sq();
    an = an.sqrt_nonneg();
    // ||Av|| / ||v|| <= ||A||: a valid lower bound uses lo/hi.
    RInt ratio = RInt::hull_rat(Rat(0), Rat(0), prec);
    Rat lo = an.lo_rat();
    Rat hi = vn.hi_rat();
    if (hi == 0) return;
    ratio = RInt::from_rat(lo / hi, prec);
    best = RInt::max(best, ratio);
  };
  CInt one(prec), zero(prec);
  one.re = RInt::from_long(1, prec);
  for (int i = 0; i < n; ++i) {
    std::vector<CInt> e(n, zero);
    e[i] = one;
    probe(e);
  }
  for (int t = 0; t < probes; ++t) {
    std::vector<CInt> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) {
      long a = static_cast<long>(rng() % 2001) - 1000;
      long b = static_cast<long>(rng() % 2001) - 1000;
      v.push_back(CInt::from_gauss(GaussRat(Rat(a, 1000), Rat(b, 1000)), prec));
    }
    probe(v);
  }
  return best;
}

MatP mat_inverse_padic(const MatP& m0, const Int& p, long aprec) {
  int n = static_cast<int>(m0.size());
  MatP m = m0;
  Padic one = Padic::from_int(1, p, aprec);
  Padic zero = Padic::zero(p, aprec);
  MatP inv(n, std::vector<Padic>(n, zero));
  for (int i = 0; i < n; ++i) inv[i][i] = one;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    long bestval = 0;
    for (int r = col; r < n; ++r) {
      if (m[r][col].is_zero_to_prec()) continue;
      long v = m[r][col].val();
      if (piv < 0 || v < bestval) { piv = r; bestval = v; }
    }
    if (piv < 0)
      fail(Errc::inconclusive, "p-adic matrix inverse: column with no known unit");
    std::swap(m[col], m[piv]);
    std::swap(inv[col], inv[piv]);
    Padic f = m[col][col].inv();
    for (int j = 0; j < n; ++j) {
      m[col][j] = m[col][j] * f;
      inv[col][j] = inv[col][j] * f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero_to_prec()) continue;
      Padic g = m[r][col];
      for (int j = 0; j < n; ++j) {
        m[r][j] = m[r][j] - g * m[col][j];
        inv[r][j] = inv[r][j] - g * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace kn
