#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kronewton/interval.hpp"

namespace kn {

// A place of the base field: the archimedean one or a finite prime. The
// local degree is 1 over the rationals and 2 for the complex embedding of
// the gaussian rationals.
struct Place {
  bool arch = true;
  Int p;  // when !arch
  int local_degree = 1;

  static Place inf(int local_degree = 1) {
    Place pl;
    pl.arch = true;
    pl.local_degree = local_degree;
    return pl;
  }
  static Place padic(Int prime) {
    Place pl;
    pl.arch = false;
    pl.p = std::move(prime);
    return pl;
  }
  static Place parse(const std::string& s);
  std::string str() const { return arch ? "inf" : "p:" + p.get_str(); }
  bool operator==(const Place& o) const {
    return arch == o.arch && (arch || p == o.p);
  }
};

// p-adic valuation of a gaussian rational; nullopt encodes +infinity (x = 0).
// For x with nonzero imaginary part the valuation is defined at inert primes
// (p = 3 mod 4) and at the ramified prime 2, where it may be a half-integer;
// split primes (p = 1 mod 4) have two incomparable extensions and are
// rejected.
std::optional<Rat> padic_val(const GaussRat& x, const Int& p);

// |x|_p = p^(-v) as an exact rational; fails when v is a half-integer.
Rat padic_abs(const GaussRat& x, const Int& p);

// |x|_p as an enclosure (handles half-integer valuations at p = 2).
RInt padic_abs_rint(const GaussRat& x, const Int& p, mpfr_prec_t prec);

// Euclidean absolute value enclosure.
RInt arch_abs(const GaussRat& x, mpfr_prec_t prec);

// Weil height data of x = (a + b i)/m normalized: returns max(|a|, |b|, m),
// so ht(x) = log of the result. Equals max(|num|, den) on rationals.
Int height_int(const GaussRat& x);
Int height_int(const std::vector<GaussRat>& xs);
RInt height_log(const GaussRat& x, mpfr_prec_t prec);

// Vector norms: Euclidean at the archimedean place, max-abs p-adically.
RInt arch_vec_norm(const std::vector<GaussRat>& z, mpfr_prec_t prec);
std::optional<Rat> padic_vec_val(const std::vector<GaussRat>& z, const Int& p);
Rat padic_vec_abs(const std::vector<GaussRat>& z, const Int& p);

}  // namespace kn
