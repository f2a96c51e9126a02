#pragma once

#include <mpfr.h>

#include <string>

#include "kronewton/ints.hpp"

namespace kn {

// Closed real interval [lo, hi] with endpoints rounded outward at every
// operation. Operations mixing precisions work at the larger one.
class RInt {
 public:
  explicit RInt(mpfr_prec_t prec = 128);
  RInt(const RInt& o);
  RInt(RInt&& o) noexcept;
  RInt& operator=(const RInt& o);
  RInt& operator=(RInt&& o) noexcept;
  ~RInt();

  static RInt from_rat(const Rat& x, mpfr_prec_t prec);
  static RInt from_int(const Int& x, mpfr_prec_t prec);
  static RInt from_long(long x, mpfr_prec_t prec);
  static RInt hull_rat(const Rat& lo, const Rat& hi, mpfr_prec_t prec);
  // Parses the serialized {lo, hi} hex-float pair.
  static RInt from_hex_pair(const std::string& lo, const std::string& hi,
                            mpfr_prec_t prec);

  mpfr_prec_t prec() const { return prec_; }

  RInt operator+(const RInt& o) const;
  RInt operator-(const RInt& o) const;
  RInt operator*(const RInt& o) const;
  RInt operator/(const RInt& o) const;  // fails if 0 in o
  RInt operator-() const;
  RInt abs() const;
  RInt sqrt_nonneg() const;  // clips negative lower endpoint to 0
  RInt log() const;          // requires lo > 0
  RInt exp() const;
  RInt root_ui(unsigned long k) const;  // k-th root, requires lo >= 0 after clip
  RInt pow_ui(unsigned long k) const;
  RInt mul_2exp(long e) const;  // exact scaling by 2^e

  static RInt hull(const RInt& a, const RInt& b);
  static RInt max(const RInt& a, const RInt& b);

  bool contains_zero() const;
  bool contains_rat(const Rat& x) const;
  bool is_positive() const;              // lo > 0
  bool is_nonnegative() const;           // lo >= 0
  bool is_negative() const;              // hi < 0
  bool definitely_lt(const RInt& o) const;   // hi < o.lo
  bool definitely_le(const RInt& o) const;   // hi <= o.lo
  bool definitely_le_rat(const Rat& x) const;
  bool definitely_ge_rat(const Rat& x) const;
  bool is_finite() const;

  Rat lo_rat() const;  // exact
  Rat hi_rat() const;  // exact
  Rat mid_rat() const;
  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up
  double mid_double() const;
  double rad_double() const;  // rounded up

  std::string lo_hex() const;
  std::string hi_hex() const;
  std::string approx_str(int digits = 17) const;

 private:
  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
  friend class CInt;
};

// Complex rectangle.
class CInt {
 public:
  RInt re, im;

  explicit CInt(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  CInt(RInt r, RInt i) : re(std::move(r)), im(std::move(i)) {}
  static CInt from_gauss(const GaussRat& x, mpfr_prec_t prec);

  CInt operator+(const CInt& o) const { return {re + o.re, im + o.im}; }
  CInt operator-(const CInt& o) const { return {re - o.re, im - o.im}; }
  CInt operator*(const CInt& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CInt operator/(const CInt& o) const;
  CInt operator-() const { return {-re, -im}; }
  CInt conj() const { return {re, -im}; }
  RInt norm_sq() const { return re * re + im * im; }
  RInt abs() const { return norm_sq().sqrt_nonneg(); }

  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool contains(const GaussRat& x) const {
    return re.contains_rat(x.re) && im.contains_rat(x.im);
  }
  bool is_real() const { return im.contains_zero(); }
  GaussRat mid() const { return {re.mid_rat(), im.mid_rat()}; }
  std::string approx_str(int digits = 17) const;
};

// Enclosure of (3 - sqrt(7)) / 2, the convergence threshold constant.
RInt newton_threshold(mpfr_prec_t prec);

}  // namespace kn
