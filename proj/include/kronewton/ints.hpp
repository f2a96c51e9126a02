#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kn {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared by the C++ core and the C API.
enum class Errc {
  ok = 0,
  reject,            // mathematical rejection / not-found
  usage,             // malformed input
  singular,          // singular Jacobian / dependent basis
  not_zero_dim,      // variety not zero-dimensional (or empty)
  budget,            // precision / retry / bit budget exhausted
  inconclusive,      // enclosure too loose, caller should refine
  bad_prime,         // prime divides excluded data
  unsupported,       // outside the supported field/degree regime
  internal,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int abs(const Int& a) {
  Int r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline Int pow_ui(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int powmod(const Int& base, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Least nonnegative residue.
inline Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::optional<Int> invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

inline bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Number of bits of |a| (0 for a = 0).
inline size_t bit_length(const Int& a) {
  return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

// p-adic valuation of a nonzero integer.
inline long valuation(const Int& a, const Int& p) {
  if (a == 0) fail(Errc::usage, "valuation of zero");
  Int rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

// Valuation and the coprime cofactor in one pass.
inline std::pair<long, Int> remove_factor(const Int& a, const Int& p) {
  Int rest;
  long v = static_cast<long>(mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
  return {v, rest};
}

inline long valuation(const Rat& x, const Int& p) {
  if (x == 0) fail(Errc::usage, "valuation of zero");
  return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

Int sqrt_minus_one_mod(const Int& p, uint64_t seed);

// Prime factorization by trial division plus Pollard rho; desk scale.
std::vector<std::pair<Int, unsigned>> factorize(Int n, uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Gaussian integers and rationals.

struct GaussInt {
  Int re, im;
  GaussInt() : re(0), im(0) {}
  GaussInt(Int r) : re(std::move(r)), im(0) {}
  GaussInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_rational() const { return im == 0; }
  GaussInt operator-() const { return {-re, -im}; }
  GaussInt operator+(const GaussInt& o) const { return {re + o.re, im + o.im}; }
  GaussInt operator-(const GaussInt& o) const { return {re - o.re, im - o.im}; }
  GaussInt operator*(const GaussInt& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
  Int norm() const { return re * re + im * im; }
  GaussInt conj() const { return {re, -im}; }
};

struct GaussRat {
  Rat re, im;
  GaussRat() : re(0), im(0) {}
  GaussRat(Rat r) : re(std::move(r)), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(const GaussInt& g) : re(g.re), im(g.im) {}
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_rational() const { return im == 0; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat conj() const { return {re, -im}; }
  Rat norm() const { return re * re + im * im; }
  GaussRat operator/(const GaussRat& o) const {
    Rat n = o.norm();
    if (n == 0) fail(Errc::singular, "gaussian division by zero");
    GaussRat num = *this * o.conj();
    return {num.re / n, num.im / n};
  }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRat& o) const { return !(*this == o); }
};

// x written as (a + b i)/m with m > 0 and gcd(content(a, b), m) = 1.
struct NormalizedGauss {
  Int a, b, m;
};

inline NormalizedGauss normalize_gauss(const GaussRat& x) {
  Int m = lcm(Int(x.re.get_den()), Int(x.im.get_den()));
  Int a = Int(x.re.get_num()) * (m / Int(x.re.get_den()));
  Int b = Int(x.im.get_num()) * (m / Int(x.im.get_den()));
  Int g = gcd(gcd(abs(a), abs(b)), m);
  if (g > 1) { a /= g; b /= g; m /= g; }
  return {a, b, m};
}

std::string to_string(const Rat& x);
std::string to_string(const GaussRat& x);
Rat parse_rat(const std::string& s);
GaussRat parse_gauss_rat(const std::string& s);

}  // namespace kn
