#include "kronewton/place.hpp"

namespace kn {

Place Place::parse(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "arch") return Place::inf();
  std::string body = s;
  if (body.rfind("p:", 0) == 0) body = body.substr(2);
  for (char c : body)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(Errc::usage, "bad place '" + s + "' (expect inf or p:<prime>)");
  if (body.empty()) fail(Errc::usage, "bad place '" + s + "'");
  Int p(body);
  if (!is_probable_prime(p)) fail(Errc::usage, "place " + s + " is not prime");
  return Place::padic(p);
}

std::optional<Rat> padic_val(const GaussRat& x, const Int& p) {
  if (x.is_zero()) return std::nullopt;
  if (x.is_rational()) return Rat(valuation(x.re, p));
  auto [a, b, m] = normalize_gauss(x);
  long vm = valuation(m == 0 ? Int(1) : m, p);
  if (p == 2) {
    // Ramified: v(a + bi) = v_2(a^2 + b^2) in units of v(1 + i) = 1/2.
    Int n = a * a + b * b;
    return Rat(valuation(n, p), 2) - Rat(vm);
  }
  if (mod(p, 4) == 3) {
    long va = a == 0 ? -1 : valuation(a, p);
    long vb = b == 0 ? -1 : valuation(b, p);
    long v = (va < 0) ? vb : (vb < 0 ? va : std::min(va, vb));
    return Rat(v) - Rat(vm);
  }
  fail(Errc::unsupported,
       "p = " + p.get_str() +
           " splits in Q(i); the p-adic place of a non-real value is ambiguous");
}

namespace {

Rat rat_p_power(const Int& p, const Int& e) {
  if (e >= 0) return Rat(pow_ui(p, e.get_ui()));
  return Rat(1) / Rat(pow_ui(p, Int(-e).get_ui()));
}

}  // namespace

Rat padic_abs(const GaussRat& x, const Int& p) {
  auto v = padic_val(x, p);
  if (!v) return Rat(0);
  if (v->get_den() != 1)
    fail(Errc::unsupported, "half-integer valuation at the ramified prime");
  return rat_p_power(p, Int(-v->get_num()));
}

RInt padic_abs_rint(const GaussRat& x, const Int& p, mpfr_prec_t prec) {
  auto v = padic_val(x, p);
  if (!v) return RInt(prec);  // exactly zero
  if (v->get_den() == 1)
    return RInt::from_rat(rat_p_power(p, Int(-v->get_num())), prec);
  // p^(-v) = exp(-v log p)
  RInt lv = RInt::from_int(p, prec).log();
  return (RInt::from_rat(Rat(-*v), prec) * lv).exp();
}

RInt arch_abs(const GaussRat& x, mpfr_prec_t prec) {
  return CInt::from_gauss(x, prec).abs();
}

Int height_int(const GaussRat& x) {
  auto [a, b, m] = normalize_gauss(x);
  Int r = kn::abs(a);
  Int ab = kn::abs(b);
  if (ab > r) r = ab;
  if (m > r) r = m;
  return r;
}

Int height_int(const std::vector<GaussRat>& xs) {
  Int r = 1;
  for (const auto& x : xs) {
    Int h = height_int(x);
    if (h > r) r = h;
  }
  return r;
}

RInt height_log(const GaussRat& x, mpfr_prec_t prec) {
  Int h = height_int(x);
  if (h <= 0) h = 1;
  return RInt::from_int(h, prec).log();
}

RInt arch_vec_norm(const std::vector<GaussRat>& z, mpfr_prec_t prec) {
  RInt s(prec);
  for (const auto& c : z) s = s + CInt::from_gauss(c, prec).norm_sq();
  return s.sqrt_nonneg();
}

std::optional<Rat> padic_vec_val(const std::vector<GaussRat>& z, const Int& p) {
  std::optional<Rat> best;
  for (const auto& c : z) {
    auto v = padic_val(c, p);
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

Rat padic_vec_abs(const std::vector<GaussRat>& z, const Int& p) {
  auto v = padic_vec_val(z, p);
  if (!v) return Rat(0);
  if (v->get_den() != 1)
    fail(Errc::unsupported, "half-integer valuation at the ramified prime");
  return rat_p_power(p, Int(-v->get_num()));
}

}  // namespace kn
