#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "kronewton/newton.hpp"
#include "kronewton/roots.hpp"

using namespace kn;

namespace {

GaussRat gr(long a) { return GaussRat{Rat(a), Rat(0)}; }
GaussRat grq(long n, long d) {
  Rat x(n, d);
  x.canonicalize();
  return GaussRat{x, Rat(0)};
}

MultiPoly mono(int nvars, const ExpoVec& e, long c) {
  MultiPoly p(nvars);
  p.add_term(e, GaussInt(Int(c)));
  return p;
}

// x^2 - c in one variable.
PolySystem univ_quad(long c) {
  PolySystem s;
  s.nvars = 1;
  MultiPoly f(1);
  f.add_term({2}, GaussInt(Int(1)));
  f.add_term({0}, GaussInt(Int(-c)));
  s.polys.push_back(f);
  return s;
}

// x^2 - x.
PolySystem univ_sqx() {
  PolySystem s;
  s.nvars = 1;
  MultiPoly f(1);
  f.add_term({2}, GaussInt(Int(1)));
  f.add_term({1}, GaussInt(Int(-1)));
  s.polys.push_back(f);
  return s;
}

// (x y - 1, x - 1): unit Jacobian determinant everywhere on x = 1, and an
// odd cross term, the worst case for the 2-adic tensor norm.
PolySystem cross_sys() {
  PolySystem s;
  s.nvars = 2;
  MultiPoly f1(2), f2(2);
  f1.add_term({1, 1}, GaussInt(Int(1)));
  f1.add_term({0, 0}, GaussInt(Int(-1)));
  f2.add_term({1, 0}, GaussInt(Int(1)));
  f2.add_term({0, 0}, GaussInt(Int(-1)));
  s.polys = {f1, f2};
  return s;
}

PolySystem linear_sys() {
  // 2x + 3y - 5, x - y - 1: solution (8/5, 3/5).
  PolySystem s;
  s.nvars = 2;
  MultiPoly f1(2), f2(2);
  f1.add_term({1, 0}, GaussInt(Int(2)));
  f1.add_term({0, 1}, GaussInt(Int(3)));
  f1.add_term({0, 0}, GaussInt(Int(-5)));
  f2.add_term({1, 0}, GaussInt(Int(1)));
  f2.add_term({0, 1}, GaussInt(Int(-1)));
  f2.add_term({0, 0}, GaussInt(Int(-1)));
  s.polys = {f1, f2};
  return s;
}

IntPoly ipoly(std::vector<Int> c) {
  IntPoly f;
  f.c = std::move(c);
  f.trim();
  return f;
}

bool rint_contains(const RInt& x, double v, double tol) {
  return x.lo_double() <= v + tol && x.hi_double() >= v - tol;
}

}  // namespace

TEST_CASE("newton step reproduces the classical iterates") {
  PolySystem f = univ_quad(2);
  std::vector<GaussRat> z{grq(3, 2)};
  z = newton_step(f, z);
  CHECK(z[0].re == Rat(17, 12));
  z = newton_step(f, z);
  CHECK(z[0].re == Rat(577, 408));
  z = newton_step(f, z);
  CHECK(z[0].re == Rat(665857, 470832));

  // Affine systems are solved exactly in one step from anywhere.
  PolySystem lin = linear_sys();
  std::vector<GaussRat> w{gr(7), gr(-3)};
  w = newton_step(lin, w);
  CHECK(w[0].re == Rat(8, 5));
  CHECK(w[1].re == Rat(3, 5));
  for (const auto& v : lin.eval_gauss(w)) CHECK(v.is_zero());
  auto w2 = newton_step(lin, w);
  CHECK(w2[0].re == w[0].re);

  // Singular Jacobian is an error, not a wrong answer.
  PolySystem sq = univ_quad(0);
  CHECK_THROWS_AS(newton_step(sq, {gr(0)}), Error);
}

TEST_CASE("dyadic rounding is nearest with ties toward zero") {
  CHECK(round_dyadic(Rat(17, 12), 8) == Rat(363, 256));
  CHECK(round_dyadic(Rat(3, 2), 0) == Rat(1));
  CHECK(round_dyadic(Rat(-3, 2), 0) == Rat(-1));
  CHECK(round_dyadic(Rat(5, 2), 0) == Rat(2));
  CHECK(round_dyadic(Rat(-5, 2), 0) == Rat(-2));
  CHECK(round_dyadic(Rat(7, 3), 4) == Rat(37, 16));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 97);
  for (int t = 0; t < 200; ++t) {
    Rat x(num(rng), den(rng));
    x.canonicalize();
    for (long bits : {0L, 3L, 10L}) {
      Rat r = round_dyadic(x, bits);
      Int d(r.get_den());
      Int cap = pow_ui(Int(2), bits);
      CHECK(mpz_divisible_p(cap.get_mpz_t(), d.get_mpz_t()));
      Rat err = r - x;
      if (err < 0) err = -err;
      CHECK(err * Int(2) * cap <= 1);
    }
  }
}

TEST_CASE("newton trajectory: pinned points, fixed point, quadratic decay") {
  PolySystem f = univ_quad(2);
  auto traj = run_newton(f, {grq(3, 2)}, 3);
  REQUIRE(traj.points.size() == 4);
  CHECK(traj.points[1][0].re == Rat(17, 12));
  CHECK(traj.points[2][0].re == Rat(577, 408));
  CHECK(traj.points[3][0].re == Rat(665857, 470832));
  CHECK(!traj.has_reference);

  // An exact zero is a fixed point.
  PolySystem g = univ_quad(1);
  auto fixed = run_newton(g, {gr(1)}, 4);
  for (const auto& pt : fixed.points) CHECK(pt[0].re == Rat(1));

  // Contraction measured against a 512-bit reference enclosure of sqrt 2.
  std::vector<CInt> ref(1, CInt(512));
  ref[0].re = RInt::from_long(2, 512).sqrt_nonneg();
  auto meas = run_newton(f, {grq(3, 2)}, 6, Place::inf(), &ref, nullptr, 0, 512);
  REQUIRE(meas.err.size() == 7);
  CHECK(meas.quadratic_ok);
  CHECK(meas.err[0].hi_double() < 0.086);
  CHECK(meas.err[3].hi_double() < 1e-11);
  CHECK(meas.err[6].hi_double() < 1e-90);

  // The p-adic reading of the same inequality, against the rational zero 0
  // of x^2 - x started at a point of 7-adic size 1/7.
  PolySystem sqx = univ_sqx();
  std::vector<GaussRat> zero{gr(0)};
  auto pad = run_newton(sqx, {gr(7)}, 3, Place::padic(Int(7)), nullptr, &zero);
  CHECK(pad.quadratic_ok);
  CHECK(pad.err[0].contains_rat(Rat(1, 7)));
  CHECK(pad.err[0].hi_double() < 0.1429);
  CHECK(pad.err[1].contains_rat(Rat(1, 49)));
  CHECK(pad.err[1].hi_double() < 0.02041);

  // Rounded iterates stay near the orbit and keep denominators capped.
  auto rounded = run_newton(f, {grq(3, 2)}, 5, Place::inf(), &ref, nullptr, 128, 512);
  for (const auto& pt : rounded.points) {
    Int d(pt[0].re.get_den());
    CHECK(mpz_divisible_p(pow_ui(Int(2), 128).get_mpz_t(), d.get_mpz_t()));
  }
  CHECK(rounded.err.back().hi_double() < 1e-30);
}

TEST_CASE("archimedean gamma: linear, univariate, cross term") {
  // Linear system: the quadratic tensor vanishes identically.
  GammaBall lin = gamma_arch_point(linear_sys(), {gr(0), gr(0)}, 128);
  CHECK(lin.frob.hi_rat() == 0);
  CHECK(lin.op.hi_rat() == 0);

  // x^2 - 2 at sqrt 2: gamma = 1/(2 sqrt 2), and the 1x1x1 tensor makes the
  // operator and Frobenius readings coincide.
  std::vector<CInt> box(1, CInt(192));
  box[0].re = RInt::from_long(2, 192).sqrt_nonneg();
  GammaBall g = gamma_arch(univ_quad(2), box, 192);
  double want = 1.0 / (2.0 * std::sqrt(2.0));
  CHECK(rint_contains(g.op, want, 1e-15));
  CHECK(rint_contains(g.frob, want, 1e-15));
  CHECK(g.op.hi_double() - g.op.lo_double() < 1e-12);

  // Exact rational zero x = 6 of x^2 - 36: gamma = 1/12 on the nose.
  GammaBall h = gamma_arch_point(univ_quad(36), {gr(6)}, 128);
  CHECK(h.op.contains_rat(Rat(1, 12)));
  CHECK(h.op.hi_double() - h.op.lo_double() < 1e-15);

  // Cross system at (1,1): the only nonzero slice is [[0,1/2],[1/2,0]], so
  // the operator norm is 1/2 and the Frobenius cap is 1/sqrt 2.
  GammaBall c = gamma_arch_point(cross_sys(), {gr(1), gr(1)}, 128);
  CHECK(rint_contains(c.frob, 1.0 / std::sqrt(2.0), 1e-12));
  CHECK(c.op.lo_double() <= 0.5 + 1e-12);
  CHECK(c.op.hi_double() >= 0.5 - 1e-12);
  CHECK(c.op.lo_double() > 0.35);          // probes reach at least e_k slices
  CHECK(c.op.hi_double() < 0.7072);        // capped by Frobenius

  // Sign flips of an equation do not move gamma.
  PolySystem flipped = cross_sys();
  flipped.polys[0] = flipped.polys[0].scale(GaussInt(Int(-1)));
  GammaBall cf = gamma_arch_point(flipped, {gr(1), gr(1)}, 128);
  CHECK(cf.frob.lo_rat() == c.frob.lo_rat());
  CHECK(cf.frob.hi_rat() == c.frob.hi_rat());

  // Degree 3 is outside the collapsed-tensor regime.
  PolySystem cubic;
  cubic.nvars = 1;
  cubic.polys.push_back(mono(1, {3}, 1));
  CHECK_THROWS_AS(gamma_arch_point(cubic, {gr(1)}, 64), Error);
}

TEST_CASE("p-adic gamma: exact values and coherence") {
  // x^2 - x at 0, p = 3: DF = -1, tensor = -1, unit norm.
  CHECK(gamma_padic(univ_sqx(), {gr(0)}, Int(3)) == Rat(1));

  // x^2 - 36 at 6: tensor entry 1/12.
  CHECK(gamma_padic(univ_quad(36), {gr(6)}, Int(2)) == Rat(4));
  CHECK(gamma_padic(univ_quad(36), {gr(6)}, Int(3)) == Rat(3));
  CHECK(gamma_padic(univ_quad(36), {gr(6)}, Int(5)) == Rat(1));

  // Cross system at (1,1): the halved cross term is 2-adically large.
  CHECK(gamma_padic(cross_sys(), {gr(1), gr(1)}, Int(2)) == Rat(2));
  CHECK(gamma_padic(cross_sys(), {gr(1), gr(1)}, Int(7)) == Rat(1));

  // The enclosure variant agrees with the exact value.
  RInt r = gamma_padic_rint(univ_quad(36), {gr(6)}, Int(2), 96);
  CHECK(r.contains_rat(Rat(4)));
  CHECK(r.hi_double() < 4.0001);

  // Scaling an equation by a p-adic unit leaves gamma alone.
  for (long c : {3, 5, -1}) {
    PolySystem s = cross_sys();
    s.polys[0] = s.polys[0].scale(GaussInt(Int(c)));
    if (Rat(c) != 0 && valuation(Int(c), Int(2)) == 0)
      CHECK(gamma_padic(s, {gr(1), gr(1)}, Int(2)) == Rat(2));
    if (valuation(Int(c), Int(7)) == 0)
      CHECK(gamma_padic(s, {gr(1), gr(1)}, Int(7)) == Rat(1));
  }

  // Finite-precision point: x^2 - x around the 3-adic zero 0.
  std::vector<Padic> zp{Padic::zero(Int(3), 6)};
  RatBall ball = gamma_padic_box(univ_sqx(), zp, Int(3));
  CHECK(ball.lb == Rat(1));
  CHECK(ball.ub == Rat(1));
  CHECK(ball.exact);

  // Singular Jacobian is detected exactly.
  CHECK_THROWS_AS(gamma_padic(univ_sqx(), {grq(1, 2)}, Int(3)), Error);
}

TEST_CASE("archimedean certification against a root enclosure") {
  PolySystem f = univ_quad(2);
  std::vector<CInt> tight(1, CInt(256));
  tight[0].re = RInt::from_long(2, 256).sqrt_nonneg();

  // Eight good decimal digits: far inside the basin.
  auto ok = certify_arch(f, {grq(141421356, 100000000)}, tight, 256);
  CHECK(ok.verdict == Verdict::accepted);
  CHECK(ok.cert.margin.lo_double() > 0);
  CHECK(ok.cert.product.hi_double() < 1e-7);
  CHECK(ok.cert.product.lo_double() > 1e-10);

  // z = 3 is far outside: 1.586 * 0.354 lands above the threshold.
  auto bad = certify_arch(f, {gr(3)}, tight, 256);
  CHECK(bad.verdict == Verdict::rejected);
  CHECK(bad.cert.product.lo_double() > 0.5);
  CHECK(bad.cert.margin.hi_double() < 0);

  // A rational zero certified against itself: margin is the full threshold.
  PolySystem g = univ_quad(1);
  std::vector<CInt> one(1, CInt(128));
  one[0] = CInt::from_gauss(gr(1), 128);
  auto self = certify_arch(g, {gr(1)}, one, 128);
  CHECK(self.verdict == Verdict::accepted);
  CHECK(self.cert.dist.hi_rat() == 0);
  RInt thr = newton_threshold(128);
  CHECK(self.cert.margin.lo_rat() == thr.lo_rat());
  CHECK(self.cert.margin.hi_rat() == thr.hi_rat());

  // A loose enclosure straddles the threshold: inconclusive, not a verdict.
  std::vector<CInt> loose(1, CInt(64));
  loose[0].re = RInt::hull_rat(Rat(1), Rat(2), 64);
  auto maybe = certify_arch(f, {grq(3, 2)}, loose, 64);
  CHECK(maybe.verdict == Verdict::inconclusive);

  // Singular Jacobian at the tested point.
  CHECK_THROWS_AS(certify_arch(f, {gr(0)}, tight, 128), Error);
}

TEST_CASE("p-adic certification against a lifted enclosure") {
  PolySystem f = univ_quad(2);
  Int p(7);
  // Classical lifting oracle: the 7-adic sqrt 2 congruent to 3 mod 7.
  IntPoly fi = ipoly({Int(-2), Int(0), Int(1)});
  Int z8 = lift_root(fi, p, Int(3), 8);
  CHECK(mod(z8, Int(49)) == 10);  // one lift lands on 10 mod 49
  std::vector<Padic> zeta{Padic::from_int(z8, p, 8)};

  auto at10 = certify_padic(f, {gr(10)}, zeta, p);
  CHECK(at10.verdict == Verdict::accepted);
  CHECK(at10.cert.dist.contains_rat(Rat(1, 49)));
  CHECK(at10.cert.dist.hi_double() < 0.02041);
  CHECK(at10.cert.dist.lo_double() > 0.0204);
  CHECK(at10.cert.gamma.hi_rat() == Rat(1));

  // Even the first digit alone is inside the 7-adic basin.
  auto at3 = certify_padic(f, {gr(3)}, zeta, p);
  CHECK(at3.verdict == Verdict::accepted);
  CHECK(at3.cert.dist.contains_rat(Rat(1, 7)));
  CHECK(at3.cert.dist.hi_double() < 0.1429);

  // Wrong residue: distance 1 with gamma 1 is a certified rejection.
  auto at1 = certify_padic(f, {gr(1)}, zeta, p);
  CHECK(at1.verdict == Verdict::rejected);
  CHECK(at1.cert.dist.lo_rat() == Rat(1));

  // One digit of the zero of x^2 - x at p = 5: the distance upper bound 1/5
  // sits above the threshold while the lower bound is 0.
  PolySystem sqx = univ_sqx();
  std::vector<Padic> coarse{Padic::zero(Int(5), 1)};
  auto maybe = certify_padic(sqx, {gr(5)}, coarse, Int(5));
  CHECK(maybe.verdict == Verdict::inconclusive);
}

TEST_CASE("eckardt-young distances and the sigma_min cross-check") {
  MatK<GaussRat> id{{gr(1), gr(0)}, {gr(0), gr(1)}};
  EckardtYoung ey = eckardt_young_arch(id, 128);
  CHECK(rint_contains(ey.dist_frob, 1.0 / std::sqrt(2.0), 1e-15));
  CHECK(ey.dist_op.lo_double() <= 1.0 + 1e-12);
  CHECK(ey.dist_op.hi_double() >= 1.0 - 1e-12);
  CHECK(ey.sigma_min.contains_rat(Rat(1)));
  CHECK(ey.sigma_min.hi_double() - ey.sigma_min.lo_double() < 1e-15);

  MatK<GaussRat> diag{{gr(1), gr(0)}, {gr(0), grq(1, 10)}};
  EckardtYoung d = eckardt_young_arch(diag, 128);
  CHECK(d.dist_op.contains_rat(Rat(1, 10)));
  CHECK(d.sigma_min.contains_rat(Rat(1, 10)));
  CHECK(d.sigma_min.hi_double() - d.sigma_min.lo_double() < 1e-15);
  CHECK(d.dist_op.hi_double() < 0.1 + 1e-6);
  // Frobenius reading is the smaller distance.
  CHECK(d.dist_frob.lo_double() <= d.dist_op.hi_double());
  CHECK(rint_contains(d.dist_frob, 1.0 / std::sqrt(101.0), 1e-12));

  // Random matrices: both archimedean readings must enclose consistently,
  // sigma_min inside [dist_frob.lo, dist_op.hi].
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-6, 6);
  for (int t = 0; t < 10; ++t) {
    MatK<GaussRat> a(3, std::vector<GaussRat>(3));
    for (auto& row : a)
      for (auto& x : row) x = gr(coef(rng));
    if (mat_det<GaussRat>(a).is_zero()) { --t; continue; }
    EckardtYoung r = eckardt_young_arch(a, 160);
    CHECK(r.sigma_min.hi_double() >= r.dist_frob.lo_double() - 1e-12);
    CHECK(r.sigma_min.lo_double() <= r.dist_op.hi_double() + 1e-12);
    // Operator and sigma_min readings agree classically.
    CHECK(r.dist_op.lo_double() <= r.sigma_min.hi_double() + 1e-12);
    CHECK(r.dist_op.hi_double() >= r.sigma_min.lo_double() - 1e-12);
  }

  // p-adic max-norm convention.
  MatK<GaussRat> dp{{gr(1), gr(0)}, {gr(0), gr(5)}};
  CHECK(eckardt_young_padic(dp, Int(5)) == Rat(1, 5));
  MatK<GaussRat> gi{{GaussRat{Rat(0), Rat(1)}, gr(0)}, {gr(0), gr(1)}};
  CHECK(eckardt_young_padic(gi, Int(3)) == Rat(1));

  MatK<GaussRat> sing{{gr(1), gr(2)}, {gr(2), gr(4)}};
  CHECK_THROWS_AS(eckardt_young_arch(sing, 64), Error);
  CHECK_THROWS_AS(eckardt_young_padic(sing, Int(3)), Error);
}

TEST_CASE("universal gamma and the product formula") {
  // Affine system: every local gamma is 0, the aggregate is exactly 1.
  GammaReport lin = universal_gamma(linear_sys(), {grq(8, 5), grq(3, 5)}, Int(7));
  CHECK(lin.universal.lo_rat() == 1);
  CHECK(lin.universal.hi_rat() == 1);
  CHECK(lin.support_primes.empty());

  // x^2 - x at 0: unit gamma everywhere.
  GammaReport sqx = universal_gamma(univ_sqx(), {gr(0)}, Int(7));
  CHECK(sqx.universal.contains_rat(Rat(1)));
  CHECK(sqx.universal.hi_rat() == Rat(1));
  CHECK(sqx.support_primes.empty());
  for (const auto& ent : sqx.places)
    if (!ent.nu.arch) CHECK(*ent.exact == Rat(1));

  // x^2 - c^2 at c: gamma_nu = |1/(2c)|_nu, so the product collapses to 2c.
  for (long c : {2L, 3L, 5L, 6L, 10L, 21L}) {
    GammaReport rep = universal_gamma(univ_quad(c * c), {gr(c)}, Int(7));
    CHECK(rep.universal.contains_rat(Rat(2 * c)));
    CHECK(rep.universal.hi_double() < 2 * c + 1e-12);
    CHECK(rep.universal.lo_double() > 2 * c - 1e-12);
    CHECK(rep.field_degree == 1);
    // Support = primes dividing 2c, even those above the scan bound.
    Int tc(2 * c);
    for (const auto& p : rep.support_primes) {
      CHECK(mpz_divisible_p(tc.get_mpz_t(), p.get_mpz_t()));
      tc /= p;
      while (mpz_divisible_p(tc.get_mpz_t(), p.get_mpz_t())) tc /= p;
    }
    CHECK(tc == 1);
  }

  // det DF = 12 makes {2, 3} the only support candidates; 5 and 7 stay unit.
  GammaReport s36 = universal_gamma(univ_quad(36), {gr(6)}, Int(7));
  REQUIRE(s36.support_primes.size() == 2);
  CHECK(s36.support_primes[0] == 2);
  CHECK(s36.support_primes[1] == 3);
  CHECK(mpz_divisible_p(s36.support_divisor.get_mpz_t(), Int(12).get_mpz_t()));
  for (const auto& ent : s36.places) {
    if (ent.nu.arch) continue;
    if (ent.nu.p == 2) CHECK(*ent.exact == Rat(4));
    if (ent.nu.p == 3) CHECK(*ent.exact == Rat(3));
    if (ent.nu.p == 5) CHECK(*ent.exact == Rat(1));
    if (ent.nu.p == 7) CHECK(*ent.exact == Rat(1));
  }

  // Gaussian zero of x^2 + 1: support concentrates at the ramified prime.
  PolySystem xi;
  xi.nvars = 1;
  MultiPoly fxi(1);
  fxi.add_term({2}, GaussInt(Int(1)));
  fxi.add_term({0}, GaussInt(Int(1)));
  xi.polys.push_back(fxi);
  GammaReport gi = universal_gamma(xi, {GaussRat{Rat(0), Rat(1)}}, Int(5));
  CHECK(gi.field_degree == 2);
  CHECK(gi.universal.contains_rat(Rat(2)));
  CHECK(gi.universal.hi_double() < 2 + 1e-12);
  REQUIRE(gi.support_primes.size() == 1);
  CHECK(gi.support_primes[0] == 2);

  // Exactness of the zero is a hypothesis, not a suggestion.
  CHECK_THROWS_AS(universal_gamma(univ_quad(2), {grq(3, 2)}, Int(5)), Error);
  CHECK_THROWS_AS(universal_gamma(univ_quad(0), {gr(0)}, Int(5)), Error);
}

TEST_CASE("bound formulas evaluate verbatim") {
  mpfr_prec_t prec = 160;
  BoundsInput in;
  in.n = 1;
  in.h = RInt::from_long(2, prec).log();  // h = log 2
  in.ht_zeta = RInt::from_long(1, prec).log();
  in.k_deg = 1;
  in.l_deg = 1;

  // 3 K n (n^2 + 4 log n + h + ht + 3) at the pinned inputs.
  BoundsReport rep = bounds_report(in, std::nullopt, std::nullopt, prec);
  double want = 3.0 * (1.0 + std::log(2.0) + 3.0);
  CHECK(rint_contains(rep.log_gamma_ub, want, 1e-12));
  CHECK(!rep.ht_lb_gamma);
  CHECK(!rep.ht_ub);

  // gamma = 1: both lower bounds are vacuous (non-positive).
  RInt lg = RInt::from_long(1, prec).log();
  BoundsReport vac = bounds_report(in, lg, lg, prec);
  CHECK(vac.ht_lb_gamma->hi_double() <= 0);
  CHECK(vac.ht_lb_ey->hi_double() <= 0);

  // The gaussian-rational specializations are the L = 2 instantiations.
  BoundsInput in2 = in;
  in2.n = 3;
  in2.l_deg = 2;
  RInt g = RInt::from_long(50, prec).log();
  RInt d = RInt::from_long(90, prec).log();
  BoundsReport two = bounds_report(in2, g, d, prec);
  CHECK(std::abs(two.ht_lb_gamma->mid_double() -
                 two.ht_lb_gamma_qi->mid_double()) < 1e-12);
  CHECK(std::abs(two.ht_lb_ey->mid_double() -
                 two.ht_lb_ey_qi->mid_double()) < 1e-12);

  // Attainable-height bound with the gaussian field discriminant.
  BoundsInput qi;
  qi.n = 1;
  qi.h = RInt(prec);
  qi.ht_zeta = RInt(prec);
  qi.k_deg = 2;
  qi.l_deg = 2;
  qi.abs_disc_l = Int(4);
  BoundsReport hu = bounds_report(qi, std::nullopt, std::nullopt, prec);
  REQUIRE(hu.ht_ub.has_value());
  CHECK(rint_contains(*hu.ht_ub, std::log(2.0) + 2.0, 1e-12));

  BoundsInput badn;
  badn.n = 0;
  CHECK_THROWS_AS(bounds_report(badn, std::nullopt, std::nullopt, prec), Error);
}

TEST_CASE("log gamma envelope on systems with planted integer zeros") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> zc(-3, 3), cc(-5, 5);
  mpfr_prec_t prec = 192;
  int done = 0;
  while (done < 30) {
    int n = 1 + static_cast<int>(rng() % 3);
    std::vector<GaussRat> zeta;
    for (int i = 0; i < n; ++i) zeta.push_back(gr(zc(rng)));
    PolySystem f;
    f.nvars = n;
    for (int i = 0; i < n; ++i) {
      MultiPoly g(n);
      for (int a = 0; a < n; ++a) {
        ExpoVec e1(n, 0);
        e1[a] = 1;
        g.add_term(e1, GaussInt(Int(cc(rng))));
        for (int b = a; b < n; ++b) {
          ExpoVec e2(n, 0);
          e2[a] += 1;
          e2[b] += 1;
          g.add_term(e2, GaussInt(Int(cc(rng))));
        }
      }
      GaussRat off = g.eval_gauss(zeta);
      g.add_term(ExpoVec(n, 0), GaussInt(-Int(off.re.get_num())));
      f.polys.push_back(g);
    }
    if (f.max_degree() > 2) continue;
    if (mat_det<GaussRat>(f.jacobian_gauss(zeta)).is_zero()) continue;
    ++done;

    BoundsInput in;
    in.n = n;
    in.h = RInt::from_int(f.coeff_height_int(), prec).log();
    Int hz = height_int(zeta);
    in.ht_zeta = RInt::from_int(hz < 1 ? Int(1) : hz, prec).log();
    BoundsReport rep = bounds_report(in, std::nullopt, std::nullopt, prec);
    RInt cap = rep.log_gamma_ub;
    CHECK(cap.hi_double() > 0);

    GammaBall arch = gamma_arch_point(f, zeta, prec);
    if (arch.op.hi_rat() > 0) {
      RInt lg = RInt::hull_rat(arch.op.hi_rat(), arch.op.hi_rat(), prec).log();
      CHECK(lg.hi_double() <= cap.lo_double());
    }
    for (long p : {2L, 3L, 5L, 7L}) {
      Rat gp = gamma_padic(f, zeta, Int(p));
      if (gp <= 1) continue;
      long k = valuation(Int(gp.get_num()), Int(p));
      RInt lg = RInt::from_long(k, prec) * RInt::from_long(p, prec).log();
      CHECK(lg.hi_double() <= cap.lo_double());
    }
  }
}

TEST_CASE("hensel basin test with a classical lifting oracle") {
  PolySystem f = univ_quad(2);
  Int p(7);

  // F(3) = 7 needs one pre-lift, after which the zero is 10 mod 49.
  HenselVerdict v = hensel_certify(f, {Rat(3)}, p, 8);
  CHECK(v.accepted);
  CHECK(v.det_unit);
  CHECK(v.pre_lifts == 1);
  CHECK(v.fval >= 2);
  REQUIRE(v.z_test.size() == 1);
  CHECK(v.z_test[0] == 10);
  REQUIRE(v.zeta.size() == 1);
  CHECK(mod(v.zeta[0], Int(49)) == 10);
  // Independent classical lifting mod 7^8.
  IntPoly fi = ipoly({Int(-2), Int(0), Int(1)});
  CHECK(v.zeta[0] == lift_root(fi, p, Int(3), 8));
  // The lifted zero satisfies the equation to full precision.
  Int p8 = pow_ui(p, 8);
  CHECK(f.polys[0].eval_mod({v.zeta[0]}, p8) == 0);

  // |F(1)|_7 = 1: immediately rejected.
  HenselVerdict r = hensel_certify(f, {Rat(1)}, p, 8);
  CHECK(!r.accepted);
  CHECK(r.fval == 0);

  // x^2 - 7 admits no 7-adic basin anywhere: exhaustive mod 49.
  PolySystem g = univ_quad(7);
  for (long z = 0; z < 49; ++z) {
    HenselVerdict w = hensel_certify(g, {Rat(z)}, p, 4);
    CHECK(!w.accepted);
  }

  // An exact rational zero short-circuits: no lifting needed.
  HenselVerdict ex = hensel_certify(univ_sqx(), {Rat(1)}, Int(5), 6);
  CHECK(ex.accepted);
  CHECK(ex.pre_lifts == 0);
  CHECK(ex.zeta[0] == 1);

  // Deeper lifting: 32 digits, rechecked exactly.
  HenselVerdict deep = hensel_certify(f, {Rat(3)}, p, 32);
  CHECK(deep.accepted);
  CHECK(f.polys[0].eval_mod({deep.zeta[0]}, pow_ui(p, 32)) == 0);
  CHECK(mod(deep.zeta[0], pow_ui(p, 8)) == v.zeta[0]);

  // Hypothesis violations are usage errors, not verdicts.
  CHECK_THROWS_AS(hensel_certify(f, {Rat(1, 7)}, p, 4), Error);
  CHECK_THROWS_AS(hensel_certify(f, {Rat(3)}, Int(6), 4), Error);
  CHECK_THROWS_AS(hensel_certify(f, {Rat(3)}, p, 1), Error);
}

TEST_CASE("hensel acceptance feeds the p-adic certifier at odd primes") {
  struct Case {
    PolySystem sys;
    std::vector<Rat> z;
    long p;
  };
  std::vector<Case> cases;
  cases.push_back({univ_quad(2), {Rat(3)}, 7});
  cases.push_back({univ_quad(2), {Rat(10)}, 7});
  cases.push_back({cross_sys(), {Rat(8), Rat(1)}, 7});
  cases.push_back({univ_sqx(), {Rat(3)}, 3});
  cases.push_back({univ_sqx(), {Rat(25)}, 5});

  for (const auto& c : cases) {
    Int p(c.p);
    HenselVerdict v = hensel_certify(c.sys, c.z, p, 8);
    REQUIRE(v.accepted);
    std::vector<Padic> zeta;
    for (const auto& zi : v.zeta) zeta.push_back(Padic::from_int(zi, p, 8));
    // The point that passed the p^2 test is gamma-certified: distance at
    // most p^-2 with gamma at most 1 clears the threshold at any odd p.
    std::vector<GaussRat> zt;
    for (const auto& r : v.z_test) zt.push_back(GaussRat{Rat(r), Rat(0)});
    auto cert = certify_padic(c.sys, zt, zeta, p);
    CHECK(cert.verdict == Verdict::accepted);
  }

  // p = 2 is genuinely different: an odd cross term makes gamma_2 = 2, and
  // a point at distance exactly 1/4 passes the basin test while failing the
  // product test. The basin is wider than the gamma disk there.
  PolySystem cr = cross_sys();
  Int two(2);
  HenselVerdict b = hensel_certify(cr, {Rat(5), Rat(1)}, two, 8);
  CHECK(b.accepted);
  CHECK(b.pre_lifts == 0);
  std::vector<Padic> onep{Padic::from_int(Int(1), two, 8),
                          Padic::from_int(Int(1), two, 8)};
  auto tight = certify_padic(cr, {gr(5), gr(1)}, onep, two);
  CHECK(tight.verdict == Verdict::rejected);
  CHECK(tight.cert.product.lo_rat() == Rat(1, 2));
  // Distance 2^-4 is enough even with gamma_2 = 2.
  auto ok = certify_padic(cr, {gr(17), gr(1)}, onep, two);
  CHECK(ok.verdict == Verdict::accepted);
}

TEST_CASE("universal gamma certifies across places simultaneously") {
  PolySystem f = univ_quad(36);
  std::vector<GaussRat> zeta{gr(6)};
  GammaReport rep = universal_gamma(f, zeta, Int(7));
  Rat univ_hi = rep.universal.hi_rat();
  Rat thr_lo = newton_threshold(192).lo_rat();

  // Archimedean: |z - 6| = 1/100 passes the universal test, so the local
  // certifier must accept too.
  {
    GaussRat z = grq(601, 100);
    CHECK(Rat(1, 100) * univ_hi <= thr_lo);
    std::vector<CInt> box{CInt::from_gauss(gr(6), 192)};
    CHECK(certify_arch(f, {z}, box, 192).verdict == Verdict::accepted);
  }
  // Finite places: pick offsets small enough in each metric.
  struct Probe {
    long p;
    long offset;
  };
  for (const auto& pr : {Probe{2, 128}, Probe{3, 243}, Probe{5, 125}}) {
    Int p(pr.p);
    GaussRat z = gr(6 + pr.offset);
    Rat dist = padic_abs(z - gr(6), p);
    CHECK(dist * univ_hi <= thr_lo);  // universal test passes here
    std::vector<Padic> zp{Padic::from_int(Int(6), p, 10)};
    CHECK(certify_padic(f, {z}, zp, p).verdict == Verdict::accepted);
  }
}

TEST_CASE("only the zero itself is simultaneously close at every place") {
  // x^2 - x at 0: universal gamma 1, radius (3 - sqrt 7)/2. A rational a/b
  // inside the archimedean radius with b <= 40 has |a| <= 7; divisibility by
  // every prime below 13 is impossible, so some finite place rejects it.
  Rat thr_hi = newton_threshold(192).hi_rat();
  std::vector<long> ps{2, 3, 5, 7, 11, 13};
  int candidates = 0;
  for (long b = 1; b <= 40; ++b)
    for (long a = -8; a <= 8; ++a) {
      if (a == 0) continue;
      Rat z(a, b);
      z.canonicalize();
      Rat az = z < 0 ? Rat(-z) : z;
      if (az > thr_hi) continue;
      ++candidates;
      bool rejected_somewhere = false;
      for (long p : ps)
        if (padic_abs(GaussRat{z, Rat(0)}, Int(p)) > thr_hi)
          rejected_somewhere = true;
      CHECK(rejected_somewhere);
    }
  CHECK(candidates > 0);

  // x^2 - 36 at 6 with universal gamma 12: the combined radius is so small
  // that bounded-denominator neighbors other than 6 cannot exist at all
  // once the finite places are consulted.
  GammaReport rep = universal_gamma(univ_quad(36), {gr(6)}, Int(7));
  Rat radius = newton_threshold(192).hi_rat() / rep.universal.lo_rat();
  for (long b = 1; b <= 300; ++b)
    for (long a = -5; a <= 5; ++a) {
      if (a == 0) continue;
      Rat off(a, b);
      off.canonicalize();
      Rat aoff = off < 0 ? Rat(-off) : off;
      if (aoff > radius) continue;
      bool rejected_somewhere = false;
      for (long p : {2L, 3L, 5L, 7L})
        if (padic_abs(GaussRat{off, Rat(0)}, Int(p)) > radius)
          rejected_somewhere = true;
      CHECK(rejected_somewhere);
    }
}

TEST_CASE("chain system shape, zero count, and separation") {
  PolySystem m3 = mignotte_system(3);
  REQUIRE(m3.nvars == 4);
  REQUIRE(m3.neqs() == 4);
  // Literal construction: X1 - 2, X2 - X1^2, X4 - X3^2, X4 X3 - 2(X2 X3 - 1)^2.
  MultiPoly e1 = mono(4, {1, 0, 0, 0}, 1) + mono(4, {0, 0, 0, 0}, -2);
  MultiPoly e2 = mono(4, {0, 1, 0, 0}, 1) + mono(4, {2, 0, 0, 0}, -1);
  MultiPoly e3 = mono(4, {0, 0, 0, 1}, 1) + mono(4, {0, 0, 2, 0}, -1);
  MultiPoly inner = mono(4, {0, 1, 1, 0}, 1) + mono(4, {0, 0, 0, 0}, -1);
  MultiPoly e4 = mono(4, {0, 0, 1, 1}, 1) - (inner * inner).scale(GaussInt(Int(2)));
  CHECK((m3.polys[0] - e1).is_zero());
  CHECK((m3.polys[1] - e2).is_zero());
  CHECK((m3.polys[2] - e3).is_zero());
  CHECK((m3.polys[3] - e4).is_zero());

  // Back-substitution collapses the system to a cubic in X_3; three roots.
  for (int n : {3, 4}) {
    Int a = pow_ui(Int(2), 1u << (n - 2));
    IntPoly cubic = ipoly({Int(-2), 4 * a, -2 * a * a, Int(1)});
    CHECK(count_real_roots(cubic) == 3);
    auto disks = refined_complex_roots(cubic, 80);
    REQUIRE(disks.size() == 3);

    // Two of the solutions are within 2 / 2^(2^(n-1)) of each other; the
    // coordinate distance extends to the full vectors through the squaring
    // chain only mildly, but here we pin the displayed coordinate bound.
    auto reals = isolate_real_roots(cubic);
    REQUIRE(reals.size() == 3);
    std::sort(reals.begin(), reals.end(),
              [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
    Rat w(1, 1000000);
    refine_real_root(cubic, reals[0], w);
    refine_real_root(cubic, reals[1], w);
    Rat sep = reals[1].hi - reals[0].lo;  // outer bound on the gap
    Rat cap = Rat(2) / pow_ui(Int(2), 1u << (n - 1));
    CHECK(sep <= cap);
  }

  // A full solution vector for n = 3 assembled from a certified root box.
  Int a3 = pow_ui(Int(2), 2);
  IntPoly cubic3 = ipoly({Int(-2), 4 * a3, -2 * a3 * a3, Int(1)});
  auto disks = refined_complex_roots(cubic3, 120);
  mpfr_prec_t prec = 160;
  for (const auto& dsk : disks) {
    CInt x3 = dsk.box(prec);
    std::vector<CInt> pt{CInt::from_gauss(gr(2), prec),
                         CInt::from_gauss(gr(4), prec), x3, x3 * x3};
    for (const auto& poly : m3.polys) {
      CInt val = poly.eval_cint(pt, prec);
      CHECK(val.contains_zero());
    }
  }

  CHECK_THROWS_AS(mignotte_system(1), Error);

  // Deformation doubles the zero set while keeping degree 2.
  PolySystem base;
  base.nvars = 1;
  base.polys.push_back(mono(1, {1}, 1) + mono(1, {0}, -2));
  PolySystem def = deform_system(base);
  REQUIRE(def.nvars == 2);
  REQUIRE(def.neqs() == 2);
  CHECK(def.polys[1].total_degree() == 2);
  for (const auto& z : {std::vector<GaussRat>{gr(2), gr(2)},
                        std::vector<GaussRat>{gr(2), gr(3)}})
    for (const auto& v : def.eval_gauss(z)) CHECK(v.is_zero());

  PolySystem def2 = deform_system(univ_sqx());
  int zeros = 0;
  for (long x : {0L, 1L})
    for (long y : {0L, 1L, 2L}) {
      std::vector<GaussRat> z{gr(x), gr(y)};
      bool all = true;
      for (const auto& v : def2.eval_gauss(z))
        if (!v.is_zero()) all = false;
      if (all) ++zeros;
    }
  CHECK(zeros == 4);
}
