#pragma once

#include <map>
#include <vector>

#include "kronewton/interval.hpp"
#include "kronewton/padic.hpp"

namespace kn {

using ExpoVec = std::vector<unsigned>;

inline unsigned expo_total(const ExpoVec& e) {
  unsigned s = 0;
  for (unsigned x : e) s += x;
  return s;
}

// Sparse multivariate polynomial over the gaussian integers.
class MultiPoly {
 public:
  explicit MultiPoly(int nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, GaussInt c);
  static MultiPoly variable(int nvars, int v, unsigned e = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<ExpoVec, GaussInt>& terms() const { return terms_; }
  unsigned total_degree() const;
  unsigned degree_in(int v) const;
  // max over coefficients of max(|re|, |im|); 1 for the zero polynomial.
  Int coeff_height_int() const;

  void add_term(const ExpoVec& e, const GaussInt& c);
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scale(const GaussInt& c) const;
  MultiPoly pow(unsigned k) const;
  MultiPoly derivative(int v) const;

  // f with X_v replaced by g / c, multiplied by c^(deg_v f) to stay integral.
  MultiPoly substitute_scaled(int v, const MultiPoly& g, const GaussInt& c) const;

  // Whether X_v occurs in any term.
  bool uses_var(int v) const;

  GaussRat eval_gauss(const std::vector<GaussRat>& pt) const;
  CInt eval_cint(const std::vector<CInt>& pt, mpfr_prec_t prec) const;
  Padic eval_padic(const std::vector<Padic>& pt, const Int& p, long aprec) const;
  // Evaluation mod m; gaussian coefficients need an i image (a square root of
  // -1 mod m) and are rejected without one.
  Int eval_mod(const std::vector<Int>& pt, const Int& m,
               const std::optional<Int>& i_image = std::nullopt) const;

 private:
  int nvars_;
  std::map<ExpoVec, GaussInt> terms_;
};

struct PolySystem {
  int nvars = 0;
  std::vector<MultiPoly> polys;

  int neqs() const { return static_cast<int>(polys.size()); }
  unsigned max_degree() const;
  Int coeff_height_int() const;
  bool square() const { return neqs() == nvars; }

  std::vector<GaussRat> eval_gauss(const std::vector<GaussRat>& pt) const;
  std::vector<std::vector<GaussRat>> jacobian_gauss(
      const std::vector<GaussRat>& pt) const;
  std::vector<std::vector<CInt>> jacobian_cint(const std::vector<CInt>& pt,
                                               mpfr_prec_t prec) const;
  std::vector<std::vector<Padic>> jacobian_padic(const std::vector<Padic>& pt,
                                                 const Int& p, long aprec) const;
};

// The chain system with three isolated zeros, two of them exponentially
// close: n+1 variables, first coordinate pinned to 2, squaring chain, and a
// final mixed equation.
PolySystem mignotte_system(int n);

// Appends the equation (X_{n+1} - X_n) (X_{n+1} - X_n - 1) in a fresh
// variable, doubling the zero count while keeping heights.
PolySystem deform_system(const PolySystem& f);

}  // namespace kn
