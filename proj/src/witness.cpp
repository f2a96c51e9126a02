#include "kronewton/witness.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "kronewton/interval.hpp"
#include "kronewton/place.hpp"

namespace kn {

namespace {

bool exact_log2(long x, long& e) {
  if (x <= 0 || (x & (x - 1)) != 0) return false;
  e = 0;
  while ((1L << e) < x) ++e;
  return true;
}

}  // namespace

long witness_exponent(long L, long ell) {
  if (L < 1) L = 1;
  if (ell < 0) ell = 0;
  long c = 4 * L;
  long e2, m, a;
  if (exact_log2(c, e2) && exact_log2(e2, m) && exact_log2(ell + 1, a)) {
    // t = a + (ell+2) m exactly; strict inequality forces the next power.
    return a + (ell + 2) * m + 1;
  }
  for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 2) {
    RInt log2v = RInt::from_long(2, prec).log();
    RInt inner = RInt::from_long(c, prec).log() / log2v;         // log2(4L)
    RInt inner2 = inner.log() / log2v;                           // log2 log2 (4L)
    RInt t = RInt::from_long(ell + 1, prec).log() / log2v +
             RInt::from_long(ell + 2, prec) * inner2;
    Rat lo = t.lo_rat(), hi = t.hi_rat();
    Int flo, fhi;
    mpz_fdiv_q(flo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(fhi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (flo == fhi) return flo.get_si() + 1;
    if (prec == 8192) return fhi.get_si() + 1;  // larger N stays admissible
  }
  fail(Errc::internal, "unreachable");
}

WitnessPoint witness_point_for_params(long L, long ell, const Int& scalar_height,
                                      int nvars) {
  WitnessPoint wp;
  wp.omega0 = scalar_height > 2 ? scalar_height : Int(2);
  wp.e = witness_exponent(L, ell);
  wp.nvars = nvars;
  return wp;
}

WitnessPoint witness_point_for(const Slp& slp) {
  return witness_point_for_params(slp.mult_count(), slp.nonscalar_depth(),
                                  slp.scalar_height_int(), slp.nvars);
}

namespace {

// log2 upper bound of the height of the program value at the witness point.
double value_bits_bound(const Slp& slp, const WitnessPoint& wp) {
  double lw = std::log2(wp.omega0.get_d());
  if (lw < 1) lw = 1;
  std::vector<double> bits(slp.ops.size(), 0.0);
  auto ref_bits = [&](const Slp::Ref& r) -> double {
    switch (r.kind) {
      case Slp::RefKind::var:
        return std::ldexp(lw, static_cast<int>(std::min<long>(
                                  wp.e * (r.idx + 1), 1000000))) +
               1;
      case Slp::RefKind::scalar:
        return static_cast<double>(bit_length(height_int(slp.scalars[r.idx]))) + 1;
      default:
        return bits[r.idx];
    }
  };
  for (size_t i = 0; i < slp.ops.size(); ++i) {
    const auto& op = slp.ops[i];
    double a = ref_bits(op.a), b = ref_bits(op.b);
    switch (op.kind) {
      case Slp::OpKind::add:
      case Slp::OpKind::sub:
        // Heights of sums: ht(x + y) <= ht x + ht y + log 2.
        bits[i] = a + b + 1;
        break;
      case Slp::OpKind::mul:
        bits[i] = a + b;
        break;
    }
    if (!std::isfinite(bits[i])) bits[i] = std::numeric_limits<double>::infinity();
  }
  return ref_bits(slp.out);
}

Int random_prime_62(std::mt19937_64& rng, bool one_mod_four) {
  while (true) {
    Int start = Int(1) << 61;
    start += Int(static_cast<unsigned long>(rng() % (1ULL << 60)));
    Int p = next_prime(start);
    if (!one_mod_four || mod(p, 4) == 1) return p;
  }
}

std::string modular_failure_bound(double value_bits, int k) {
  // At most value_bits/61 prime divisors of a nonzero value among roughly
  // 2^56 primes of 62 bits; k independent draws.
  std::ostringstream os;
  double per = value_bits / 61.0 / std::pow(2.0, 56);
  os << "<= (" << value_bits << "/61 / 2^56)^" << k << " ~= "
     << std::scientific << std::pow(per, k);
  return os.str();
}

}  // namespace

ZeroTestReport is_zero_witness(const Slp& slp, const ZeroTestOptions& opt) {
  slp.validate();
  ZeroTestReport rep;
  WitnessPoint wp = witness_point_for(slp);
  rep.omega0 = wp.omega0;
  rep.e = wp.e;
  double bits = value_bits_bound(slp, wp);
  // Coordinates have 2^(e i) log2(omega0) bits; exact evaluation is gated on
  // the final bound and per-step budget.
  std::vector<bool> used(slp.nvars, false);
  auto mark = [&](const Slp::Ref& r) {
    if (r.kind == Slp::RefKind::var) used[r.idx] = true;
  };
  for (const auto& op : slp.ops) {
    mark(op.a);
    mark(op.b);
  }
  mark(slp.out);
  bool coords_fit = true;
  double lw = std::log2(wp.omega0.get_d());
  for (int i = 1; i <= slp.nvars; ++i) {
    if (!used[i - 1]) continue;
    double cb = std::ldexp(lw, static_cast<int>(std::min<long>(wp.e * i, 1000000)));
    if (!(cb <= static_cast<double>(opt.budget_bits))) coords_fit = false;
  }
  if (coords_fit && std::isfinite(bits) &&
      bits <= static_cast<double>(opt.budget_bits)) {
    std::vector<GaussRat> pt;
    pt.reserve(slp.nvars);
    for (int i = 1; i <= slp.nvars; ++i) {
      if (!used[i - 1]) {
        pt.push_back(GaussRat(Rat(0)));
        continue;
      }
      unsigned long ee = static_cast<unsigned long>(wp.e) * i;
      Int coord;
      mpz_pow_ui(coord.get_mpz_t(), Int(2).get_mpz_t(), ee);  // exponent N^i = 2^(e i)
      Int omega = pow_ui(wp.omega0, coord.get_ui());
      pt.push_back(GaussRat(Rat(omega)));
    }
    GaussRat v = slp.eval_gauss_budget(pt, opt.budget_bits * 2);
    rep.is_zero = v.is_zero();
    rep.certain = true;
    rep.mode = "witness-exact";
    rep.failure_bound = "0";
    return rep;
  }
  // Modular evaluation at the witness point.
  rep.mode = "witness-modular";
  std::mt19937_64 rng(opt.seed);
  bool gaussian = slp.has_gaussian_scalars();
  bool all_zero = true;
  for (int t = 0; t < opt.primes; ++t) {
    Int q;
    std::optional<Int> i_img;
    for (int tries = 0;; ++tries) {
      q = random_prime_62(rng, gaussian);
      if (mod(wp.omega0, q) == 0) continue;
      bool ok = true;
      for (const auto& s : slp.scalars) {
        if (mod(Int(s.re.get_den()), q) == 0 || mod(Int(s.im.get_den()), q) == 0) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      if (tries > 64) fail(Errc::internal, "no usable prime found");
    }
    if (gaussian) i_img = sqrt_minus_one_mod(q, rng());
    std::vector<Int> pt;
    Int qm1 = q - 1;
    for (int i = 1; i <= slp.nvars; ++i) {
      Int expo = powmod(Int(2), Int(wp.e) * i, qm1);
      pt.push_back(powmod(mod(wp.omega0, q), expo, q));
    }
    Int r = slp.eval_mod(pt, q, i_img);
    rep.primes.push_back(q);
    rep.residues.push_back(r);
    if (r != 0) {
      all_zero = false;
      break;
    }
  }
  if (!all_zero) {
    rep.is_zero = false;
    rep.certain = true;  // nonzero residue proves a nonzero value
    rep.failure_bound = "0";
  } else {
    rep.is_zero = true;
    rep.certain = false;
    rep.failure_bound =
        modular_failure_bound(bits, static_cast<int>(rep.primes.size()));
  }
  return rep;
}

ZeroTestReport is_zero_sz(const Slp& slp, const ZeroTestOptions& opt) {
  slp.validate();
  ZeroTestReport rep;
  long ell = slp.nonscalar_depth();
  // Total degree of the value is at most 2^ell.
  long degree_bound = 1L << std::min<long>(ell, 40);
  long S = 1L << 24;
  std::mt19937_64 rng(opt.seed ^ 0x5a5a5a5aULL);
  bool all_zero = true;
  for (int rep_i = 0; rep_i < opt.sz_reps && all_zero; ++rep_i) {
    std::vector<Int> pt;
    std::vector<GaussRat> gpt;
    for (int i = 0; i < slp.nvars; ++i) {
      long x = static_cast<long>(rng() % static_cast<unsigned long>(S));
      pt.push_back(Int(x));
      gpt.push_back(GaussRat(Rat(x)));
    }
    rep.sample_points.push_back(pt);
    bool done = false;
    try {
      GaussRat v = slp.eval_gauss_budget(gpt, opt.budget_bits);
      if (!v.is_zero()) all_zero = false;
      rep.mode = "sz-exact";
      done = true;
    } catch (const Error& err) {
      if (err.code != Errc::budget) throw;
    }
    if (!done) {
      rep.mode = "sz-modular";
      bool gaussian = slp.has_gaussian_scalars();
      for (int t = 0; t < 2; ++t) {
        Int q = random_prime_62(rng, gaussian);
        std::optional<Int> i_img;
        if (gaussian) i_img = sqrt_minus_one_mod(q, rng());
        Int r = slp.eval_mod(pt, q, i_img);
        rep.primes.push_back(q);
        rep.residues.push_back(r);
        if (r != 0) {
          all_zero = false;
          break;
        }
      }
    }
  }
  rep.is_zero = all_zero;
  if (!all_zero) {
    rep.certain = (rep.mode == "sz-exact");
    rep.failure_bound = rep.certain ? "0" : "residue-based; see witness mode";
  } else {
    rep.certain = false;
    double per = static_cast<double>(degree_bound) / static_cast<double>(S);
    std::ostringstream os;
    os << "<= (" << degree_bound << "/" << S << ")^" << opt.sz_reps << " = "
       << std::scientific << std::pow(per, opt.sz_reps);
    rep.failure_bound = os.str();
  }
  return rep;
}

}  // namespace kn
