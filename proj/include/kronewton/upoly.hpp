#pragma once

#include <functional>
#include <vector>

#include "kronewton/interval.hpp"

namespace kn {

inline bool coeff_is_zero(const Rat& x) { return x == 0; }
inline bool coeff_is_zero(const GaussRat& x) { return x.is_zero(); }

// Dense univariate polynomial over a field, little-endian coefficients.
template <class K>
struct UPoly {
  std::vector<K> c;

  UPoly() = default;
  explicit UPoly(std::vector<K> cc) : c(std::move(cc)) { trim(); }

  void trim() {
    while (!c.empty() && coeff_is_zero(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const K& lead() const { return c.back(); }

  UPoly operator+(const UPoly& o) const {
    std::vector<K> r(std::max(c.size(), o.c.size()), K());
    for (size_t i = 0; i < c.size(); ++i) r[i] = r[i] + c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] = r[i] + o.c[i];
    return UPoly(std::move(r));
  }
  UPoly operator-(const UPoly& o) const {
    std::vector<K> r(std::max(c.size(), o.c.size()), K());
    for (size_t i = 0; i < c.size(); ++i) r[i] = r[i] + c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r[i] = r[i] - o.c[i];
    return UPoly(std::move(r));
  }
  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<K> r(c.size() + o.c.size() - 1, K());
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r[i + j] = r[i + j] + c[i] * o.c[j];
    return UPoly(std::move(r));
  }
  UPoly scale(const K& s) const {
    UPoly r = *this;
    for (auto& x : r.c) x = x * s;
    r.trim();
    return r;
  }
  UPoly derivative() const {
    if (c.size() <= 1) return UPoly();
    std::vector<K> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * K(Rat(static_cast<long>(i)));
    return UPoly(std::move(r));
  }
  K eval(const K& x) const {
    K acc{};
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }
  // Division with remainder; divisor must be nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) fail(Errc::usage, "polynomial division by zero");
    UPoly r = *this;
    std::vector<K> q(std::max<int>(0, degree() - d.degree() + 1), K());
    while (!r.is_zero() && r.degree() >= d.degree()) {
      K f = r.c.back() / d.lead();
      int shift = r.degree() - d.degree();
      q[shift] = q[shift] + f;
      for (int i = 0; i <= d.degree(); ++i)
        r.c[shift + i] = r.c[shift + i] - f * d.c[i];
      r.trim();
    }
    return {UPoly(std::move(q)), r};
  }
  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    K inv = K(Rat(1)) / lead();
    for (auto& x : r.c) x = x * inv;
    return r;
  }
};

template <class K>
UPoly<K> upoly_gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using RatPoly = UPoly<Rat>;
using GaussPoly = UPoly<GaussRat>;

// Dense univariate polynomial over the integers, little-endian.
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> cc) : c(std::move(cc)) { trim(); }
  static IntPoly from_rat_poly(const RatPoly& f);  // clears denominators, primitive

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Int& lead() const { return c.back(); }
  Int coeff_height() const;  // max |c_i|, at least 1

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly scale(const Int& s) const;
  IntPoly derivative() const;

  Int content() const;
  // Content-free with positive leading coefficient; zero stays zero.
  IntPoly primitive() const;

  Rat eval_rat(const Rat& x) const;
  Int eval_int(const Int& x) const;
  CInt eval_cint(const CInt& x, mpfr_prec_t prec) const;
  CInt eval_deriv_cint(const CInt& x, mpfr_prec_t prec) const;
  Int eval_mod(const Int& x, const Int& m) const;

  RatPoly to_rat() const;
  GaussPoly to_gauss() const;

  // Exact division; fails if the divisor does not divide.
  IntPoly divexact(const IntPoly& d) const;
  bool divides(const IntPoly& d) const;  // d | this over Q

  std::string str() const;  // debugging aid
};

// Subresultant resultant of two integer polynomials (exact, with sign).
Int resultant(const IntPoly& a, const IntPoly& b);

// gcd over Q returned as a primitive integer polynomial.
IntPoly intpoly_gcd(const IntPoly& a, const IntPoly& b);

inline bool is_squarefree(const IntPoly& f) {
  return intpoly_gcd(f, f.derivative()).degree() == 0;
}

// ---------------------------------------------------------------------------
// Arithmetic mod a prime.

struct ZpPoly {
  Int p;
  std::vector<Int> c;

  ZpPoly(Int prime, std::vector<Int> cc) : p(std::move(prime)), c(std::move(cc)) {
    normalize();
  }
  static ZpPoly reduce(const IntPoly& f, const Int& p);
  static ZpPoly x(const Int& p) { return ZpPoly(p, {Int(0), Int(1)}); }

  void normalize();
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }

  ZpPoly operator+(const ZpPoly& o) const;
  ZpPoly operator-(const ZpPoly& o) const;
  ZpPoly operator*(const ZpPoly& o) const;
  std::pair<ZpPoly, ZpPoly> divmod(const ZpPoly& d) const;
  ZpPoly monic() const;
  Int eval(const Int& x) const;
};

ZpPoly zp_gcd(ZpPoly a, ZpPoly b);
ZpPoly zp_powmod(const ZpPoly& base, const Int& e, const ZpPoly& f);

// All roots of f mod p (f need not be squarefree; roots listed once),
// deterministic given the seed. Sorted ascending.
std::vector<Int> roots_mod_p(const IntPoly& f, const Int& p, uint64_t seed = 7);

// Degrees of the irreducible factors of a squarefree f mod p (with
// multiplicity in the multiset sense), via distinct-degree factorization.
// Fails if p divides lead(f) or disc(f).
std::vector<int> ddf_degree_pattern(const IntPoly& f, const Int& p);

// Newton lift of a simple root r0 of f mod p to a root mod p^k.
Int lift_root(const IntPoly& f, const Int& p, const Int& r0, long k);

}  // namespace kn
