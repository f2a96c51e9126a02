#pragma once

#include <string>

#include "kronewton/ints.hpp"

namespace kn {

// A p-adic number known to finite absolute precision: x = p^val * unit with
// the unit known mod p^relk, so x is pinned mod p^(val+relk). A value that is
// indistinguishable from zero carries only its absolute precision bound:
// |x| <= p^-aprec.
class Padic {
 public:
  static Padic zero(const Int& p, long aprec);
  static Padic from_rat(const Rat& x, const Int& p, long aprec);
  static Padic from_int(const Int& x, const Int& p, long aprec);

  const Int& prime() const { return p_; }
  bool is_zero_to_prec() const { return zero_; }
  long val() const;            // requires a known-nonzero value
  const Int& unit() const;     // requires a known-nonzero value
  long rel_prec() const;       // digits of the unit
  long abs_prec() const { return zero_ ? aprec_ : val_ + relk_; }

  Padic operator+(const Padic& o) const;
  Padic operator-(const Padic& o) const;
  Padic operator*(const Padic& o) const;
  Padic operator-() const;
  Padic inv() const;           // fails on zero-to-precision
  Padic operator/(const Padic& o) const { return *this * o.inv(); }

  // Exact |x|_p when nonzero is known; an upper bound p^-aprec otherwise.
  // Returned as an exact rational power of p.
  Rat abs_ub() const;
  // Lower bound: 0 for zero-to-precision values.
  Rat abs_lb() const;

  // The residue x mod p^m as an integer in [0, p^m); requires val >= 0 and
  // m <= abs_prec.
  Int residue(long m) const;

  std::string to_string() const;

 private:
  Padic() = default;
  Int p_;
  bool zero_ = true;
  long aprec_ = 0;  // when zero_
  long val_ = 0;    // when !zero_
  Int unit_;        // in [1, p^relk), coprime to p
  long relk_ = 0;
  void normalize_unit();
};

}  // namespace kn
