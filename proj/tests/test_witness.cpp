#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "kronewton/witness.hpp"

using namespace kn;

namespace {

GaussRat gr(long a) { return GaussRat{Rat(a), Rat(0)}; }

// Random sparse polynomial with small integer coefficients.
MultiPoly random_poly(std::mt19937_64& rng, int nvars, int terms, unsigned maxdeg) {
  MultiPoly f(nvars);
  std::uniform_int_distribution<int> cd(-9, 9);
  std::uniform_int_distribution<unsigned> ed(0, maxdeg);
  for (int t = 0; t < terms; ++t) {
    ExpoVec e(nvars, 0);
    unsigned budget = maxdeg;
    for (int v = 0; v < nvars; ++v) {
      unsigned x = ed(rng) % (budget + 1);
      e[v] = x;
      budget -= x;
    }
    int c = cd(rng);
    if (c == 0) c = 1;
    f.add_term(e, GaussInt{Int(c), Int(0)});
  }
  return f;
}

std::vector<GaussRat> random_point(std::mt19937_64& rng, int nvars) {
  std::uniform_int_distribution<long> d(-20, 20);
  std::uniform_int_distribution<long> den(1, 7);
  std::vector<GaussRat> pt;
  for (int i = 0; i < nvars; ++i) {
    Rat x(d(rng), den(rng));
    x.canonicalize();
    pt.push_back(GaussRat{x, Rat(0)});
  }
  return pt;
}

// (A+B)^2 - A^2 - 2AB - B^2, written with explicit multiplications.
Slp binomial_zero_slp() {
  Slp s;
  s.nvars = 2;
  s.scalars = {gr(2)};
  int sum = s.push(Slp::OpKind::add, Slp::var(0), Slp::var(1));
  int sq = s.push(Slp::OpKind::mul, Slp::tmp(sum), Slp::tmp(sum));
  int a2 = s.push(Slp::OpKind::mul, Slp::var(0), Slp::var(0));
  int b2 = s.push(Slp::OpKind::mul, Slp::var(1), Slp::var(1));
  int ab = s.push(Slp::OpKind::mul, Slp::var(0), Slp::var(1));
  int tab = s.push(Slp::OpKind::mul, Slp::sc(0), Slp::tmp(ab));
  int d1 = s.push(Slp::OpKind::sub, Slp::tmp(sq), Slp::tmp(a2));
  int d2 = s.push(Slp::OpKind::sub, Slp::tmp(d1), Slp::tmp(tab));
  int d3 = s.push(Slp::OpKind::sub, Slp::tmp(d2), Slp::tmp(b2));
  s.out = Slp::tmp(d3);
  s.validate();
  return s;
}

}  // namespace

TEST_CASE("slp cost model counts non-scalar multiplications only") {
  Slp s = binomial_zero_slp();
  // Four non-scalar squarings/products; the scalar doubling is free.
  CHECK(s.mult_count() == 4);
  CHECK(s.nonscalar_depth() == 1);

  Slp t;
  t.nvars = 1;
  t.scalars = {gr(3)};
  int x2 = t.push(Slp::OpKind::mul, Slp::var(0), Slp::var(0));
  int x4 = t.push(Slp::OpKind::mul, Slp::tmp(x2), Slp::tmp(x2));
  int x8 = t.push(Slp::OpKind::mul, Slp::tmp(x4), Slp::tmp(x4));
  int y = t.push(Slp::OpKind::mul, Slp::sc(0), Slp::tmp(x8));
  t.out = Slp::tmp(y);
  t.validate();
  CHECK(t.mult_count() == 3);
  CHECK(t.nonscalar_depth() == 3);
  // Degree fits the depth bound deg <= 2^depth.
  auto ex = t.expand();
  CHECK(ex.total_degree() == 8);
  CHECK(ex.total_degree() <= (1u << t.nonscalar_depth()));
}

TEST_CASE("compile_to_slp matches direct evaluation and the length bound") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    int nvars = 1 + static_cast<int>(rng() % 4);
    MultiPoly f = random_poly(rng, nvars, 1 + static_cast<int>(rng() % 6), 5);
    Slp s = compile_to_slp(f);
    s.validate();
    // The expansion oracle recovers the input exactly.
    CHECK((s.expand() - f).is_zero());
    for (int k = 0; k < 5; ++k) {
      auto pt = random_point(rng, nvars);
      GaussRat a = f.eval_gauss(pt);
      GaussRat b = s.eval_gauss(pt);
      CHECK(a.re == b.re);
      CHECK(a.im == b.im);
    }
  }
}

TEST_CASE("compile_to_slp length bound") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int nvars = 1 + static_cast<int>(rng() % 4);
    MultiPoly f = random_poly(rng, nvars, 1 + static_cast<int>(rng() % 6), 6);
    Slp s = compile_to_slp(f);
    long bound = 0;
    for (const auto& [e, c] : f.terms()) {
      (void)c;
      unsigned d = 0;
      for (unsigned x : e) d += x;
      if (d > 0) bound += d - 1;
    }
    CHECK(s.mult_count() <= bound);
  }
}

TEST_CASE("expand_scaled handles rational scalars") {
  Slp s;
  s.nvars = 1;
  s.scalars = {GaussRat{Rat(1, 2), Rat(0)}};
  int h = s.push(Slp::OpKind::mul, Slp::sc(0), Slp::var(0));
  int q = s.push(Slp::OpKind::mul, Slp::tmp(h), Slp::tmp(h));
  s.out = Slp::tmp(q);
  auto ex = s.expand_scaled();
  // x^2 / 4.
  CHECK(ex.den == 4);
  CHECK(ex.num.total_degree() == 2);
}

TEST_CASE("witness exponent pinned values and monotone admissibility") {
  // 4L = 16 = 2^4, l + 1 = 2: e = 1 + (1 + 2) * 2 + 1 = 8, N = 256.
  CHECK(witness_exponent(4, 1) == 8);
  // 4L = 4 = 2^2, l + 1 = 1: e = 0 + 2 * 1 + 1 = 3, N = 8.
  CHECK(witness_exponent(1, 0) == 3);
  // L clamps to 1.
  CHECK(witness_exponent(0, 0) == 3);

  // The returned exponent satisfies the defining inequality with room for
  // every larger exponent (checked in doubles on moderate inputs).
  for (long L : {1L, 2L, 3L, 4L, 7L, 12L, 33L}) {
    for (long ell : {0L, 1L, 2L, 3L, 5L}) {
      long e = witness_exponent(L, ell);
      double t = std::log2(static_cast<double>(ell) + 1) +
                 (static_cast<double>(ell) + 2) * std::log2(std::log2(4.0 * L));
      CHECK(static_cast<double>(e) > t);
      CHECK(static_cast<double>(e) <= t + (ell + 3));  // not absurdly above
    }
  }
}

TEST_CASE("witness point parameters") {
  Slp s = binomial_zero_slp();
  WitnessPoint w = witness_point_for(s);
  CHECK(w.omega0 == 2);  // scalar 2 has height 2
  CHECK(w.nvars == 2);
  CHECK(w.e == witness_exponent(4, 1));
}

TEST_CASE("witness zero test certifies algebraic identities exactly") {
  Slp s = binomial_zero_slp();
  auto rep = is_zero_witness(s);
  CHECK(rep.is_zero);
  CHECK(rep.certain);
  CHECK(rep.mode == "witness-exact");
  CHECK(rep.failure_bound == "0");
}

TEST_CASE("witness zero test finds nonzero programs") {
  std::mt19937_64 rng(99);
  int nonzero_seen = 0;
  for (int trial = 0; trial < 25; ++trial) {
    int nvars = 1 + static_cast<int>(rng() % 3);
    MultiPoly f = random_poly(rng, nvars, 1 + static_cast<int>(rng() % 4), 4);
    if (f.is_zero()) continue;
    Slp s = compile_to_slp(f);
    auto rep = is_zero_witness(s);
    CHECK(!rep.is_zero);
    CHECK(rep.certain);
    ++nonzero_seen;
    // Oracle agreement: the expansion is visibly nonzero.
    CHECK(!s.expand().is_zero());
  }
  CHECK(nonzero_seen > 10);
}

TEST_CASE("witness zero test falls back to modular residues under tiny budgets") {
  Slp s = binomial_zero_slp();
  ZeroTestOptions opt;
  opt.budget_bits = 4;  // forces the residue route
  auto rep = is_zero_witness(s, opt);
  CHECK(rep.is_zero);
  CHECK(!rep.certain);
  CHECK(rep.mode == "witness-modular");
  CHECK(rep.primes.size() >= 1);
  CHECK(rep.failure_bound != "0");

  // A nonzero program keeps a nonzero residue: still a certain answer.
  MultiPoly f(1);
  f.add_term({3}, GaussInt{Int(1), Int(0)});
  f.add_term({0}, GaussInt{Int(-7), Int(0)});
  Slp t = compile_to_slp(f);
  auto rep2 = is_zero_witness(t, opt);
  CHECK(!rep2.is_zero);
  CHECK(rep2.certain);
  CHECK(rep2.mode == "witness-modular");
}

TEST_CASE("witness handles gaussian scalars") {
  // (x + i)(x - i) - x^2 - 1 is identically zero.
  Slp s;
  s.nvars = 1;
  s.scalars = {GaussRat{Rat(0), Rat(1)}, GaussRat{Rat(0), Rat(-1)}, gr(1)};
  int a = s.push(Slp::OpKind::add, Slp::var(0), Slp::sc(0));
  int b = s.push(Slp::OpKind::add, Slp::var(0), Slp::sc(1));
  int pr = s.push(Slp::OpKind::mul, Slp::tmp(a), Slp::tmp(b));
  int x2 = s.push(Slp::OpKind::mul, Slp::var(0), Slp::var(0));
  int d1 = s.push(Slp::OpKind::sub, Slp::tmp(pr), Slp::tmp(x2));
  int d2 = s.push(Slp::OpKind::sub, Slp::tmp(d1), Slp::sc(2));
  s.out = Slp::tmp(d2);
  s.validate();
  CHECK(s.has_gaussian_scalars());
  auto rep = is_zero_witness(s);
  CHECK(rep.is_zero);

  // (x + i)(x - i) - x^2 + 1 = 2 is not.
  Slp t = s;
  t.ops[5] = {Slp::OpKind::add, Slp::tmp(d1), Slp::sc(2)};
  auto rep2 = is_zero_witness(t);
  CHECK(!rep2.is_zero);
  CHECK(rep2.certain);
}

TEST_CASE("schwartz-zippel route agrees with the witness route") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 30; ++trial) {
    int nvars = 1 + static_cast<int>(rng() % 3);
    MultiPoly f = random_poly(rng, nvars, 1 + static_cast<int>(rng() % 4), 4);
    Slp s = compile_to_slp(f);
    bool truth = s.expand().is_zero();
    ZeroTestOptions opt;
    opt.seed = rng();
    auto a = is_zero_witness(s, opt);
    auto b = is_zero_sz(s, opt);
    CHECK(a.is_zero == truth);
    CHECK(b.is_zero == truth);
    if (!truth) {
      CHECK(a.certain);
      CHECK(b.certain);
    } else {
      CHECK(b.failure_bound != "0");
    }
  }
}

TEST_CASE("budget guard trips instead of exploding") {
  // Repeated squaring of (x + 2): degree 2^12 with a tiny budget.
  Slp s;
  s.nvars = 1;
  s.scalars = {gr(2)};
  int cur = s.push(Slp::OpKind::add, Slp::var(0), Slp::sc(0));
  for (int i = 0; i < 12; ++i) cur = s.push(Slp::OpKind::mul, Slp::tmp(cur), Slp::tmp(cur));
  s.out = Slp::tmp(cur);
  std::vector<GaussRat> pt = {gr(3)};
  CHECK_THROWS_AS(s.eval_gauss_budget(pt, 64), Error);
  // Exact evaluation without the guard still works at this size.
  GaussRat v = s.eval_gauss(pt);
  CHECK(v.re > 0);
}
