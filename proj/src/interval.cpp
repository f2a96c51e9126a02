#include "kronewton/interval.hpp"

#include <algorithm>
#include <cstdlib>

namespace kn {

RInt::RInt(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RInt::RInt(const RInt& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RInt::RInt(RInt&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, 2);
  mpfr_init2(hi_, 2);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RInt& RInt::operator=(const RInt& o) {
  if (this == &o) return *this;
  if (prec_ != o.prec_) {
    mpfr_set_prec(lo_, o.prec_);
    mpfr_set_prec(hi_, o.prec_);
    prec_ = o.prec_;
  }
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

RInt& RInt::operator=(RInt&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

RInt::~RInt() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RInt RInt::from_rat(const Rat& x, mpfr_prec_t prec) {
  RInt r(prec);
  mpfr_set_q(r.lo_, x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, x.get_mpq_t(), MPFR_RNDU);
  return r;
}

RInt RInt::from_int(const Int& x, mpfr_prec_t prec) {
  RInt r(prec);
  mpfr_set_z(r.lo_, x.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, x.get_mpz_t(), MPFR_RNDU);
  return r;
}

RInt RInt::from_long(long x, mpfr_prec_t prec) {
  RInt r(prec);
  mpfr_set_si(r.lo_, x, MPFR_RNDD);
  mpfr_set_si(r.hi_, x, MPFR_RNDU);
  return r;
}

RInt RInt::hull_rat(const Rat& lo, const Rat& hi, mpfr_prec_t prec) {
  RInt r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

RInt RInt::from_hex_pair(const std::string& lo, const std::string& hi,
                         mpfr_prec_t prec) {
  RInt r(prec);
  if (mpfr_set_str(r.lo_, lo.c_str(), 0, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_, hi.c_str(), 0, MPFR_RNDU) != 0)
    fail(Errc::usage, "bad interval endpoint literal");
  return r;
}

RInt RInt::operator+(const RInt& o) const {
  RInt r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

RInt RInt::operator-(const RInt& o) const {
  RInt r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

RInt RInt::operator*(const RInt& o) const {
  RInt r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  // Lower endpoint: min of the four products rounded down.
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  // Upper endpoint: max of the four products rounded up.
  mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

RInt RInt::operator/(const RInt& o) const {
  if (o.contains_zero())
    fail(Errc::inconclusive, "interval division by enclosure of zero");
  RInt r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

RInt RInt::operator-() const {
  RInt r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RInt RInt::abs() const {
  RInt r(prec_);
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

RInt RInt::sqrt_nonneg() const {
  RInt r(prec_);
  if (mpfr_sgn(hi_) < 0)
    fail(Errc::inconclusive, "sqrt of negative interval");
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RInt RInt::log() const {
  if (mpfr_sgn(lo_) <= 0)
    fail(Errc::inconclusive, "log requires strictly positive enclosure");
  RInt r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RInt RInt::exp() const {
  RInt r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RInt RInt::root_ui(unsigned long k) const {
  if (mpfr_sgn(hi_) < 0) fail(Errc::inconclusive, "root of negative interval");
  RInt r(prec_);
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
  return r;
}

RInt RInt::pow_ui(unsigned long k) const {
  RInt acc = from_long(1, prec_);
  RInt base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

RInt RInt::mul_2exp(long e) const {
  RInt r(prec_);
  mpfr_mul_2si(r.lo_, lo_, e, MPFR_RNDD);
  mpfr_mul_2si(r.hi_, hi_, e, MPFR_RNDU);
  return r;
}

RInt RInt::hull(const RInt& a, const RInt& b) {
  RInt r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RInt RInt::max(const RInt& a, const RInt& b) {
  RInt r(std::max(a.prec_, b.prec_));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

bool RInt::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RInt::contains_rat(const Rat& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool RInt::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool RInt::is_nonnegative() const { return mpfr_sgn(lo_) >= 0; }
bool RInt::is_negative() const { return mpfr_sgn(hi_) < 0; }
bool RInt::definitely_lt(const RInt& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool RInt::definitely_le(const RInt& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }

bool RInt::definitely_le_rat(const Rat& x) const {
  return mpfr_cmp_q(hi_, x.get_mpq_t()) <= 0;
}

bool RInt::definitely_ge_rat(const Rat& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) >= 0;
}

bool RInt::is_finite() const {
  return mpfr_number_p(lo_) != 0 && mpfr_number_p(hi_) != 0;
}

namespace {

Rat rat_from_mpfr(const mpfr_t x) {
  if (mpfr_zero_p(x)) return Rat(0);
  if (!mpfr_number_p(x)) fail(Errc::inconclusive, "non-finite endpoint");
  Int m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rat r(m);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num().get_mpz_t(), r.get_num().get_mpz_t(),
                 static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den().get_mpz_t(), r.get_den().get_mpz_t(),
                 static_cast<mp_bitcnt_t>(-e));
  }
  r.canonicalize();
  return r;
}

}  // namespace

Rat RInt::lo_rat() const { return rat_from_mpfr(lo_); }
Rat RInt::hi_rat() const { return rat_from_mpfr(hi_); }
Rat RInt::mid_rat() const { return (lo_rat() + hi_rat()) / 2; }

double RInt::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RInt::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RInt::mid_double() const {
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

double RInt::rad_double() const {
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_sub(m, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(m, m, 1, MPFR_RNDU);
  double d = mpfr_get_d(m, MPFR_RNDU);
  mpfr_clear(m);
  return d;
}

namespace {

std::string hex_of(const mpfr_t x) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%Ra", x);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace

std::string RInt::lo_hex() const { return hex_of(lo_); }
std::string RInt::hi_hex() const { return hex_of(hi_); }

std::string RInt::approx_str(int digits) const {
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Re", digits, m);
  std::string out(s);
  mpfr_free_str(s);
  mpfr_clear(m);
  return out;
}

CInt CInt::from_gauss(const GaussRat& x, mpfr_prec_t prec) {
  return {RInt::from_rat(x.re, prec), RInt::from_rat(x.im, prec)};
}

CInt CInt::operator/(const CInt& o) const {
  RInt n = o.norm_sq();
  if (n.contains_zero())
    fail(Errc::inconclusive, "complex interval division by enclosure of zero");
  CInt num = *this * o.conj();
  return {num.re / n, num.im / n};
}

std::string CInt::approx_str(int digits) const {
  return re.approx_str(digits) + " + " + im.approx_str(digits) + "*i";
}

RInt newton_threshold(mpfr_prec_t prec) {
  RInt three = RInt::from_long(3, prec);
  RInt seven = RInt::from_long(7, prec);
  RInt two = RInt::from_long(2, prec);
  return (three - seven.sqrt_nonneg()) / two;
}

}  // namespace kn
