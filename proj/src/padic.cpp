#include "kronewton/padic.hpp"

namespace kn {

namespace {

Int p_power(const Int& p, long e) {
  if (e < 0) fail(Errc::internal, "negative p power");
  return pow_ui(p, static_cast<unsigned long>(e));
}

}  // namespace

void Padic::normalize_unit() {
  if (relk_ <= 0) {
    // No digits of the unit survive: the value is only bounded.
    zero_ = true;
    aprec_ = val_ + relk_;
    unit_ = 0;
    return;
  }
  unit_ = mod(unit_, p_power(p_, relk_));
  if (unit_ == 0) fail(Errc::internal, "unit reduced to zero");
}

Padic Padic::zero(const Int& p, long aprec) {
  Padic x;
  x.p_ = p;
  x.zero_ = true;
  x.aprec_ = aprec;
  return x;
}

Padic Padic::from_int(const Int& v, const Int& p, long aprec) {
  return from_rat(Rat(v), p, aprec);
}

Padic Padic::from_rat(const Rat& x, const Int& p, long aprec) {
  if (x == 0) return zero(p, aprec);
  Padic r;
  r.p_ = p;
  auto [vn, numc] = remove_factor(Int(x.get_num()), p);
  auto [vd, denc] = remove_factor(Int(x.get_den()), p);
  long v = vn - vd;
  if (v >= aprec) return zero(p, aprec);
  r.zero_ = false;
  r.val_ = v;
  r.relk_ = aprec - v;
  Int pk = p_power(p, r.relk_);
  auto dinv = invmod(mod(denc, pk), pk);
  if (!dinv) fail(Errc::internal, "denominator not invertible mod p^k");
  r.unit_ = mod(mod(numc, pk) * *dinv, pk);
  r.normalize_unit();
  return r;
}

long Padic::val() const {
  if (zero_) fail(Errc::inconclusive, "valuation of zero-to-precision value");
  return val_;
}

const Int& Padic::unit() const {
  if (zero_) fail(Errc::inconclusive, "unit of zero-to-precision value");
  return unit_;
}

long Padic::rel_prec() const {
  if (zero_) fail(Errc::inconclusive, "relative precision of zero-to-precision value");
  return relk_;
}

Padic Padic::operator-() const {
  Padic r = *this;
  if (!r.zero_) {
    r.unit_ = p_power(p_, relk_) - r.unit_;
    r.normalize_unit();
  }
  return r;
}

Padic Padic::operator+(const Padic& o) const {
  if (p_ != o.p_) fail(Errc::internal, "mixed primes");
  long a = std::min(abs_prec(), o.abs_prec());
  if (zero_ && o.zero_) return zero(p_, a);
  if (zero_) {
    Padic r = o;
    // Truncate to the common absolute precision.
    if (r.val_ >= a) return zero(p_, a);
    r.relk_ = a - r.val_;
    r.normalize_unit();
    return r;
  }
  if (o.zero_) return o + *this;
  long m = std::min(val_, o.val_);
  long digits = a - m;
  if (digits <= 0) return zero(p_, a);
  Int pk = p_power(p_, digits);
  Int s = mod(unit_ * p_power(p_, val_ - m) + o.unit_ * p_power(p_, o.val_ - m), pk);
  if (s == 0) return zero(p_, a);
  auto [v, u] = remove_factor(s, p_);
  Padic r;
  r.p_ = p_;
  r.zero_ = false;
  r.val_ = m + v;
  r.relk_ = a - r.val_;
  r.unit_ = u;
  r.normalize_unit();
  if (r.relk_ <= 0) return zero(p_, a);
  return r;
}

Padic Padic::operator-(const Padic& o) const { return *this + (-o); }

Padic Padic::operator*(const Padic& o) const {
  if (p_ != o.p_) fail(Errc::internal, "mixed primes");
  if (zero_ || o.zero_) {
    // |xy| <= p^-(A1 + v2) with v2 = val or the other bound.
    long b1 = zero_ ? aprec_ : val_;
    long b2 = o.zero_ ? o.aprec_ : o.val_;
    return zero(p_, b1 + b2);
  }
  Padic r;
  r.p_ = p_;
  r.zero_ = false;
  r.val_ = val_ + o.val_;
  r.relk_ = std::min(relk_, o.relk_);
  Int pk = p_power(p_, r.relk_);
  r.unit_ = mod(mod(unit_, pk) * mod(o.unit_, pk), pk);
  r.normalize_unit();
  return r;
}

Padic Padic::inv() const {
  if (zero_) fail(Errc::inconclusive, "inverse of zero-to-precision value");
  Padic r;
  r.p_ = p_;
  r.zero_ = false;
  r.val_ = -val_;
  r.relk_ = relk_;
  Int pk = p_power(p_, relk_);
  auto u = invmod(unit_, pk);
  if (!u) fail(Errc::internal, "unit not invertible");
  r.unit_ = *u;
  r.normalize_unit();
  return r;
}

Rat Padic::abs_ub() const {
  long e = zero_ ? aprec_ : val_;
  if (e >= 0) return Rat(1) / Rat(p_power(p_, e));
  return Rat(p_power(p_, -e));
}

Rat Padic::abs_lb() const {
  if (zero_) return Rat(0);
  return abs_ub();
}

Int Padic::residue(long m) const {
  if (m > abs_prec()) fail(Errc::inconclusive, "residue beyond known precision");
  if (zero_) return 0;
  if (val_ < 0) fail(Errc::usage, "residue of negative-valuation value");
  return mod(unit_ * p_power(p_, val_), p_power(p_, m));
}

std::string Padic::to_string() const {
  if (zero_) return "O(" + p_.get_str() + "^" + std::to_string(aprec_) + ")";
  return p_.get_str() + "^" + std::to_string(val_) + "*" + unit_.get_str() +
         " + O(" + p_.get_str() + "^" + std::to_string(abs_prec()) + ")";
}

}  // namespace kn
