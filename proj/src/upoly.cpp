#include "kronewton/upoly.hpp"

#include <random>
#include <sstream>

namespace kn {

IntPoly IntPoly::from_rat_poly(const RatPoly& f) {
  Int den = 1;
  for (const auto& x : f.c) den = lcm(den, Int(x.get_den()));
  std::vector<Int> cc;
  cc.reserve(f.c.size());
  for (const auto& x : f.c) cc.push_back(Int(x.get_num()) * (den / Int(x.get_den())));
  return IntPoly(std::move(cc)).primitive();
}

Int IntPoly::coeff_height() const {
  Int h = 1;
  for (const auto& x : c) {
    Int a = kn::abs(x);
    if (a > h) h = a;
  }
  return h;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
  for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
  for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<Int> r(c.size() + o.c.size() - 1, Int(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::scale(const Int& s) const {
  IntPoly r = *this;
  for (auto& x : r.c) x *= s;
  r.trim();
  return r;
}

IntPoly IntPoly::derivative() const {
  if (c.size() <= 1) return IntPoly();
  std::vector<Int> r(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Int(static_cast<long>(i));
  return IntPoly(std::move(r));
}

Int IntPoly::content() const {
  Int g = 0;
  for (const auto& x : c) g = gcd(g, x);
  return g;
}

IntPoly IntPoly::primitive() const {
  if (is_zero()) return *this;
  Int g = content();
  if (lead() < 0) g = -g;
  IntPoly r = *this;
  for (auto& x : r.c) x /= g;
  return r;
}

Rat IntPoly::eval_rat(const Rat& x) const {
  Rat acc(0);
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + Rat(c[i]);
  return acc;
}

Int IntPoly::eval_int(const Int& x) const {
  Int acc = 0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

CInt IntPoly::eval_cint(const CInt& x, mpfr_prec_t prec) const {
  CInt acc(prec);
  for (size_t i = c.size(); i-- > 0;) {
    acc = acc * x;
    acc.re = acc.re + RInt::from_int(c[i], prec);
  }
  return acc;
}

CInt IntPoly::eval_deriv_cint(const CInt& x, mpfr_prec_t prec) const {
  return derivative().eval_cint(x, prec);
}

Int IntPoly::eval_mod(const Int& x, const Int& m) const {
  Int acc = 0;
  Int xr = mod(x, m);
  for (size_t i = c.size(); i-- > 0;) acc = mod(acc * xr + c[i], m);
  return acc;
}

RatPoly IntPoly::to_rat() const {
  std::vector<Rat> r;
  r.reserve(c.size());
  for (const auto& x : c) r.push_back(Rat(x));
  return RatPoly(std::move(r));
}

GaussPoly IntPoly::to_gauss() const {
  std::vector<GaussRat> r;
  r.reserve(c.size());
  for (const auto& x : c) r.push_back(GaussRat(Rat(x)));
  return GaussPoly(std::move(r));
}

IntPoly IntPoly::divexact(const IntPoly& d) const {
  auto [q, r] = to_rat().divmod(d.to_rat());
  if (!r.is_zero()) fail(Errc::internal, "divexact: not divisible");
  for (const auto& x : q.c)
    if (x.get_den() != 1) fail(Errc::internal, "divexact: non-integer quotient");
  std::vector<Int> cc;
  cc.reserve(q.c.size());
  for (const auto& x : q.c) cc.push_back(Int(x.get_num()));
  return IntPoly(std::move(cc));
}

bool IntPoly::divides(const IntPoly& d) const {
  if (d.is_zero()) return false;
  auto [q, r] = to_rat().divmod(d.to_rat());
  (void)q;
  return r.is_zero();
}

std::string IntPoly::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    os << c[i].get_str();
  }
  os << "]";
  return os.str();
}

namespace {

// Pseudo-remainder over Z: some power of lc(B) times (A mod B).
IntPoly prem(IntPoly a, const IntPoly& b) {
  int db = b.degree();
  const Int& lb = b.lead();
  while (!a.is_zero() && a.degree() >= db) {
    int shift = a.degree() - db;
    Int la = a.lead();
    for (auto& x : a.c) x *= lb;
    for (int i = 0; i <= db; ++i) a.c[shift + i] -= la * b.c[i];
    a.trim();
  }
  return a;
}

// Exact determinant by fraction-free (Bareiss) elimination.
Int bareiss_det(std::vector<std::vector<Int>> m) {
  size_t n = m.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        if (r != 0) fail(Errc::internal, "bareiss: inexact division");
        m[i][j] = q;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

Int resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  int da = a.degree(), db = b.degree();
  if (da == 0) return pow_ui(a.c[0], static_cast<unsigned long>(db));
  if (db == 0) return pow_ui(b.c[0], static_cast<unsigned long>(da));
  size_t n = static_cast<size_t>(da + db);
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
  // db rows of a's coefficients, then da rows of b's, high degree first.
  for (int r = 0; r < db; ++r)
    for (int i = 0; i <= da; ++i) m[r][r + i] = a.c[da - i];
  for (int r = 0; r < da; ++r)
    for (int i = 0; i <= db; ++i) m[db + r][r + i] = b.c[db - i];
  return bareiss_det(std::move(m));
}

IntPoly intpoly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  IntPoly A = a.primitive(), B = b.primitive();
  if (A.degree() < B.degree()) std::swap(A, B);
  while (!B.is_zero()) {
    IntPoly R = prem(A, B).primitive();
    A = std::move(B);
    B = std::move(R);
  }
  return A.primitive();
}

// ---------------------------------------------------------------------------

ZpPoly ZpPoly::reduce(const IntPoly& f, const Int& p) {
  std::vector<Int> cc;
  cc.reserve(f.c.size());
  for (const auto& x : f.c) cc.push_back(mod(x, p));
  return ZpPoly(p, std::move(cc));
}

void ZpPoly::normalize() {
  for (auto& x : c) x = mod(x, p);
  while (!c.empty() && c.back() == 0) c.pop_back();
}

ZpPoly ZpPoly::operator+(const ZpPoly& o) const {
  std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
  for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
  return ZpPoly(p, std::move(r));
}

ZpPoly ZpPoly::operator-(const ZpPoly& o) const {
  std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
  for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
  return ZpPoly(p, std::move(r));
}

ZpPoly ZpPoly::operator*(const ZpPoly& o) const {
  if (is_zero() || o.is_zero()) return ZpPoly(p, {});
  std::vector<Int> r(c.size() + o.c.size() - 1, Int(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r[i + j] = mod(r[i + j] + c[i] * o.c[j], p);
  return ZpPoly(p, std::move(r));
}

std::pair<ZpPoly, ZpPoly> ZpPoly::divmod(const ZpPoly& d) const {
  if (d.is_zero()) fail(Errc::usage, "mod-p division by zero");
  auto linv = invmod(d.c.back(), p);
  if (!linv) fail(Errc::internal, "non-invertible leading coefficient");
  ZpPoly r = *this;
  std::vector<Int> q(std::max<int>(0, degree() - d.degree() + 1), Int(0));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    Int f = mod(r.c.back() * *linv, p);
    int shift = r.degree() - d.degree();
    q[shift] = mod(q[shift] + f, p);
    for (int i = 0; i <= d.degree(); ++i)
      r.c[shift + i] = mod(r.c[shift + i] - f * d.c[i], p);
    r.normalize();
  }
  return {ZpPoly(p, std::move(q)), r};
}

ZpPoly ZpPoly::monic() const {
  if (is_zero()) return *this;
  auto linv = invmod(c.back(), p);
  if (!linv) fail(Errc::internal, "non-invertible leading coefficient");
  std::vector<Int> r = c;
  for (auto& x : r) x = mod(x * *linv, p);
  return ZpPoly(p, std::move(r));
}

Int ZpPoly::eval(const Int& x) const {
  Int acc = 0;
  Int xr = mod(x, p);
  for (size_t i = c.size(); i-- > 0;) acc = mod(acc * xr + c[i], p);
  return acc;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ZpPoly zp_powmod(const ZpPoly& base, const Int& e, const ZpPoly& f) {
  ZpPoly acc(f.p, {Int(1)});
  ZpPoly b = base.divmod(f).second;
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = (acc * b).divmod(f).second;
    k >>= 1;
    if (k > 0) b = (b * b).divmod(f).second;
  }
  return acc;
}

namespace {

void cz_split_linear(const ZpPoly& g, std::vector<Int>& out, std::mt19937_64& rng) {
  if (g.degree() <= 0) return;
  const Int& p = g.p;
  if (g.degree() == 1) {
    // root of c1 x + c0
    auto inv = invmod(g.c[1], p);
    out.push_back(mod(-g.c[0] * *inv, p));
    return;
  }
  Int half = (p - 1) / 2;
  for (int tries = 0; tries < 256; ++tries) {
    Int a = mod(Int(static_cast<unsigned long>(rng())), p);
    ZpPoly shifted(p, {a, Int(1)});
    ZpPoly h = zp_powmod(shifted, half, g) - ZpPoly(p, {Int(1)});
    ZpPoly d = zp_gcd(h, g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      auto [q, r] = g.divmod(d);
      (void)r;
      cz_split_linear(d, out, rng);
      cz_split_linear(q, out, rng);
      return;
    }
  }
  fail(Errc::internal, "equal-degree splitting failed");
}

}  // namespace

std::vector<Int> roots_mod_p(const IntPoly& f, const Int& p, uint64_t seed) {
  ZpPoly fb = ZpPoly::reduce(f, p);
  if (fb.is_zero()) fail(Errc::usage, "polynomial vanishes mod p");
  std::vector<Int> out;
  if (p < 64) {
    for (Int r = 0; r < p; ++r)
      if (fb.eval(r) == 0) out.push_back(r);
    return out;
  }
  fb = fb.monic();
  ZpPoly xp = zp_powmod(ZpPoly::x(p), p, fb);
  ZpPoly g = zp_gcd(xp - ZpPoly::x(p), fb);
  if (g.degree() <= 0) return out;
  std::mt19937_64 rng(seed);
  cz_split_linear(g, out, rng);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> ddf_degree_pattern(const IntPoly& f, const Int& p) {
  if (mod(f.lead(), p) == 0) fail(Errc::bad_prime, "p divides leading coefficient");
  ZpPoly fb = ZpPoly::reduce(f, p).monic();
  ZpPoly fp = ZpPoly::reduce(f.derivative(), p);
  if (zp_gcd(fb, fp).degree() != 0)
    fail(Errc::bad_prime, "not squarefree mod p");
  std::vector<int> pattern;
  ZpPoly rest = fb;
  ZpPoly xq = ZpPoly::x(p);
  int d = 0;
  while (rest.degree() > 0) {
    ++d;
    xq = zp_powmod(xq, p, rest);
    if (2 * d > rest.degree()) {
      pattern.push_back(rest.degree());
      break;
    }
    ZpPoly g = zp_gcd(xq - ZpPoly::x(p), rest);
    if (g.degree() > 0) {
      for (int i = 0; i < g.degree() / d; ++i) pattern.push_back(d);
      auto [q, r] = rest.divmod(g);
      (void)r;
      rest = q;
      xq = xq.divmod(rest).second;
    }
  }
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

Int lift_root(const IntPoly& f, const Int& p, const Int& r0, long k) {
  Int r = mod(r0, p);
  if (f.eval_mod(r, p) != 0) fail(Errc::usage, "not a root mod p");
  IntPoly df = f.derivative();
  if (mod(df.eval_mod(r, p), p) == 0)
    fail(Errc::singular, "multiple root mod p cannot be lifted");
  long cur = 1;
  while (cur < k) {
    long nxt = std::min(2 * cur, k);
    Int pk = pow_ui(p, static_cast<unsigned long>(nxt));
    Int fr = f.eval_mod(r, pk);
    Int dfr = df.eval_mod(r, pk);
    auto inv = invmod(dfr, pk);
    if (!inv) fail(Errc::internal, "derivative not invertible in lift");
    r = mod(r - fr * *inv, pk);
    cur = nxt;
  }
  return r;
}

}  // namespace kn
