#include "kronewton/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "kronewton/roots.hpp"

namespace kn {

namespace {

// Nearest integer to num/den (den > 0), ties rounded toward zero.
Int round_near(const Int& num, const Int& den) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Int twice = r * 2;
  if (twice > den) return q + 1;
  if (twice < den) return q;
  return q < 0 ? q + 1 : q;  // tie
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void row_submul(std::vector<Int>& a, const Int& q, const std::vector<Int>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= q * b[i];
}

}  // namespace

// All-integer reduction: d[k] are the Gram determinants of the leading k
// vectors, lam[k][j] = d[j] * mu[k][j]. Exact divisions throughout.
LllResult lll_reduce(const std::vector<std::vector<Int>>& input, const Rat& delta) {
  if (!(delta > Rat(1, 4) && delta < 1))
    fail(Errc::usage, "reduction parameter must lie in (1/4, 1)");
  const int n = static_cast<int>(input.size());
  if (n == 0) return {{}, {}};
  const size_t m = input[0].size();
  for (const auto& row : input)
    if (row.size() != m) fail(Errc::usage, "ragged basis");

  std::vector<std::vector<Int>> b(static_cast<size_t>(n) + 1), U(static_cast<size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    b[i] = input[i - 1];
    U[i].assign(n, Int(0));
    U[i][i - 1] = 1;
  }
  std::vector<std::vector<Int>> lam(static_cast<size_t>(n) + 1,
                                    std::vector<Int>(static_cast<size_t>(n) + 1, Int(0)));
  std::vector<Int> d(static_cast<size_t>(n) + 1, Int(0));
  d[0] = 1;
  d[1] = dot(b[1], b[1]);
  if (d[1] == 0) fail(Errc::usage, "dependent rows in lattice basis");

  const Int nu = delta.get_num(), de = delta.get_den();

  auto red = [&](int k, int l) {
    Int q = round_near(lam[k][l], d[l]);
    if (q == 0) return;
    row_submul(b[k], q, b[l]);
    row_submul(U[k], q, U[l]);
    lam[k][l] -= q * d[l];
    for (int i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  int k = 2, kmax = 1;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 1; j <= k; ++j) {
        Int u = dot(b[k], b[j]);
        for (int i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k)
          lam[k][j] = u;
        else {
          d[k] = u;
          if (d[k] == 0) fail(Errc::usage, "dependent rows in lattice basis");
        }
      }
    }
    while (true) {
      red(k, k - 1);
      // Exchange condition: de*d[k]*d[k-2] < nu*d[k-1]^2 - de*lam^2.
      if (de * d[k] * d[k - 2] < nu * d[k - 1] * d[k - 1] - de * lam[k][k - 1] * lam[k][k - 1]) {
        std::swap(b[k], b[k - 1]);
        std::swap(U[k], U[k - 1]);
        for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Int lb = lam[k][k - 1];
        Int B = (d[k - 2] * d[k] + lb * lb) / d[k - 1];
        for (int i = k + 1; i <= kmax; ++i) {
          Int t = lam[i][k];
          lam[i][k] = (d[k] * lam[i][k - 1] - lb * t) / d[k - 1];
          lam[i][k - 1] = (B * t + lb * lam[i][k]) / d[k];
        }
        d[k - 1] = B;
        k = std::max(2, k - 1);
      } else {
        for (int l = k - 2; l >= 1; --l) red(k, l);
        ++k;
        break;
      }
    }
  }

  LllResult out;
  out.basis.assign(b.begin() + 1, b.end());
  out.transform.assign(U.begin() + 1, U.end());
  return out;
}

bool is_lll_reduced(const std::vector<std::vector<Int>>& basis, const Rat& delta) {
  const int n = static_cast<int>(basis.size());
  if (n == 0) return true;
  const size_t m = basis[0].size();
  // Rational Gram-Schmidt from scratch.
  std::vector<std::vector<Rat>> bs(n, std::vector<Rat>(m));
  std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> B(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (size_t t = 0; t < m; ++t) bs[i][t] = Rat(basis[i][t]);
    for (int j = 0; j < i; ++j) {
      Rat num(0);
      for (size_t t = 0; t < m; ++t) num += Rat(basis[i][t]) * bs[j][t];
      if (B[j] == 0) return false;
      mu[i][j] = num / B[j];
      for (size_t t = 0; t < m; ++t) bs[i][t] -= mu[i][j] * bs[j][t];
    }
    for (size_t t = 0; t < m; ++t) B[i] += bs[i][t] * bs[i][t];
    if (B[i] == 0) return false;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      Rat a = mu[i][j] < 0 ? Rat(-mu[i][j]) : mu[i][j];
      if (a > Rat(1, 2)) return false;
    }
  for (int k = 1; k < n; ++k)
    if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) return false;
  return true;
}

std::optional<Rat> rational_reconstruct(const Int& r, const Int& M, const Int& bound) {
  if (M <= 0 || bound <= 0) fail(Errc::usage, "bad reconstruction parameters");
  Int r0 = M, t0(0);
  Int r1 = mod(r, M), t1(1);
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    t0 = t1;
    r1 = r2;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  if (abs(t1) > bound) return std::nullopt;
  if (gcd(r1, t1) != 1) return std::nullopt;
  Rat out = Rat(r1) / Rat(t1);
  out.canonicalize();
  // num = r * den mod M confirms the congruence.
  if (mod(out.get_num() - r * out.get_den(), M) != 0) return std::nullopt;
  return out;
}

std::optional<GaussRat> gauss_reconstruct(const Int& re, const Int& im, const Int& M,
                                          const Int& bound) {
  auto a = rational_reconstruct(re, M, bound);
  if (!a) return std::nullopt;
  auto b = rational_reconstruct(im, M, bound);
  if (!b) return std::nullopt;
  return GaussRat{*a, *b};
}

namespace {

Int round_rat(const Rat& x) {
  return round_near(x.get_num(), x.get_den());
}

}  // namespace

std::vector<std::vector<Int>> relation_candidates(const std::vector<CInt>& vals,
                                                  mpfr_prec_t m, int count) {
  const int K = static_cast<int>(vals.size());
  if (K == 0) return {};
  std::vector<std::vector<Int>> rows(K, std::vector<Int>(static_cast<size_t>(K) + 2, Int(0)));
  Int scale = Int(1) << static_cast<unsigned>(m);
  for (int i = 0; i < K; ++i) {
    rows[i][i] = 1;
    GaussRat mid = vals[i].mid();
    rows[i][K] = round_rat(mid.re * Rat(scale));
    rows[i][K + 1] = round_rat(mid.im * Rat(scale));
  }
  auto red = lll_reduce(rows);
  std::vector<std::vector<Int>> out;
  for (const auto& row : red.basis) {
    std::vector<Int> a(row.begin(), row.begin() + K);
    bool zero = std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
    if (zero) continue;
    // Sign-normalize on the trailing nonzero entry for determinism.
    for (int i = K - 1; i >= 0; --i)
      if (a[i] != 0) {
        if (a[i] < 0)
          for (auto& x : a) x = -x;
        break;
      }
    out.push_back(std::move(a));
    if (static_cast<int>(out.size()) >= count) break;
  }
  return out;
}

namespace {

// Shared residual gate: |P(z)| below tau at precision m and below tau^2-ish
// at doubled precision, both scaled by the coefficient and value magnitudes.
bool arch_residual_ok(const IntPoly& cand, const std::function<CInt(mpfr_prec_t)>& refine,
                      long m) {
  mpfr_prec_t p1 = static_cast<mpfr_prec_t>(m);
  int e = cand.degree();
  auto scaled = [&](mpfr_prec_t prec, long drop) {
    CInt z = refine(prec);
    RInt r = cand.eval_cint(z, prec).abs();
    RInt sc = (RInt::from_int(Int(1), prec) + z.abs()).pow_ui(static_cast<unsigned>(e));
    sc = sc * RInt::from_int(cand.coeff_height() * (e + 1), prec);
    RInt tau = sc.mul_2exp(-drop);
    return r.definitely_lt(tau);
  };
  return scaled(p1, m / 2) && scaled(2 * p1, m);
}

}  // namespace

std::optional<IntPoly> min_poly_arch(const std::function<CInt(mpfr_prec_t)>& refine,
                                     const MinPolyQuery& q) {
  for (int e = 1; e <= q.max_degree; ++e) {
    long m = std::max(128L, static_cast<long>(q.precision_factor) * (e + 1) *
                                (q.height_bits + e + 8));
    CInt z = refine(static_cast<mpfr_prec_t>(m) + 32);
    std::vector<CInt> vals;
    CInt pw{RInt::from_int(Int(1), static_cast<mpfr_prec_t>(m) + 32),
            RInt::from_int(Int(0), static_cast<mpfr_prec_t>(m) + 32)};
    for (int i = 0; i <= e; ++i) {
      vals.push_back(pw);
      pw = pw * z;
    }
    for (auto& a : relation_candidates(vals, static_cast<mpfr_prec_t>(m))) {
      IntPoly cand{std::vector<Int>(a.begin(), a.end())};
      if (cand.degree() != e) continue;  // lower degrees were already tried
      cand = cand.primitive();
      if (static_cast<long>(bit_length(cand.coeff_height())) > q.height_bits + 16) continue;
      if (arch_residual_ok(cand, refine, m)) return cand;
    }
  }
  return std::nullopt;
}

std::optional<IntPoly> min_poly_padic(const std::function<Padic(long)>& refine,
                                      const Int& p, const MinPolyQuery& q) {
  double lg = std::log2(p.get_d());
  for (int e = 1; e <= q.max_degree; ++e) {
    long mbits = std::max(128L, static_cast<long>(q.precision_factor) * (e + 1) *
                                    (q.height_bits + e + 8));
    long k = static_cast<long>(std::ceil(mbits / lg)) + 8;
    Padic x = refine(k);
    if (!x.is_zero_to_prec() && x.val() < 0)
      fail(Errc::unsupported, "p-adic minimal polynomial needs a nonnegative valuation");
    Int pk = pow_ui(p, static_cast<unsigned long>(k));
    const int K = e + 1;
    // Non-relations keep a nonzero residue coordinate; scaling that column
    // makes every relation (exact zero there) shorter than any non-relation.
    Int S = Int(1) << static_cast<unsigned>(q.height_bits + K + 48);
    std::vector<std::vector<Int>> rows(static_cast<size_t>(K) + 1,
                                       std::vector<Int>(static_cast<size_t>(K) + 1, Int(0)));
    Padic pw = Padic::from_int(Int(1), p, k);
    for (int i = 0; i < K; ++i) {
      rows[i][i] = 1;
      rows[i][K] = S * (pw.is_zero_to_prec() ? Int(0) : pw.residue(k));
      pw = pw * x;
    }
    rows[K][K] = S * pk;
    auto red = lll_reduce(rows);
    for (const auto& row : red.basis) {
      std::vector<Int> a(row.begin(), row.begin() + K);
      IntPoly cand{std::move(a)};
      if (cand.degree() != e) continue;
      cand = cand.primitive();
      if (static_cast<long>(bit_length(cand.coeff_height())) > q.height_bits + 16) continue;
      auto residual_ok = [&](long kk) {
        Padic xv = refine(kk);
        Padic acc = Padic::zero(p, kk);
        Padic mono = Padic::from_int(Int(1), p, kk);
        for (int i = 0; i <= cand.degree(); ++i) {
          acc = acc + mono * Padic::from_int(cand.c[i], p, kk);
          mono = mono * xv;
        }
        long slack = 4 * (e + 2);
        return acc.abs_ub() <= Rat(1) / Rat(pow_ui(p, static_cast<unsigned long>(
                                                          std::max(1L, kk - slack))));
      };
      if (residual_ok(k) && residual_ok(2 * k)) return cand;
    }
  }
  return std::nullopt;
}

namespace {

// Subset sums of a degree multiset as a feasibility mask over 0..d.
std::vector<char> subset_sums(const std::vector<int>& pattern, int d) {
  std::vector<char> ok(static_cast<size_t>(d) + 1, 0);
  ok[0] = 1;
  for (int x : pattern)
    for (int s = d; s >= x; --s)
      if (ok[s - x]) ok[s] = 1;
  return ok;
}

}  // namespace

std::optional<IntPoly> find_rational_factor(const IntPoly& f, uint64_t seed) {
  (void)seed;
  IntPoly g = f.primitive();
  int d = g.degree();
  if (d <= 1) return std::nullopt;
  if (!is_squarefree(g)) fail(Errc::usage, "factor search needs a squarefree input");
  if (g.c[0] == 0) return IntPoly{{Int(0), Int(1)}};

  std::vector<char> feasible(static_cast<size_t>(d) + 1, 1);
  static const long kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                 37, 41, 43, 47, 53, 59, 61, 67, 71, 73};
  int good = 0;
  for (long lp : kPrimes) {
    if (good >= 8) break;
    std::vector<int> pattern;
    try {
      pattern = ddf_degree_pattern(g, Int(lp));
    } catch (const Error&) {
      continue;
    }
    ++good;
    auto sums = subset_sums(pattern, d);
    for (int s = 0; s <= d; ++s) feasible[s] = feasible[s] && sums[s];
    bool only_trivial = true;
    for (int s = 1; s < d; ++s)
      if (feasible[s]) only_trivial = false;
    if (only_trivial) return std::nullopt;
  }

  // Ambiguous: recover the minimal polynomial of one root. A proper factor
  // exists exactly when that degree is below d; the exact division gate
  // rejects numerical accidents. Coefficient ceiling from the factor bound
  // 2^d * |f|_2.
  long hbits = d + static_cast<long>(bit_length(g.coeff_height())) +
               static_cast<long>(bit_length(Int(d + 1))) + 8;
  auto disks = isolate_complex_roots(g, 128);
  RootDisk disk = disks.front();
  auto refine = [&](mpfr_prec_t prec) {
    disk = refine_complex_root(g, disk, prec);
    return disk.box(prec);
  };
  for (int pass = 0; pass < 2; ++pass) {
    MinPolyQuery q;
    q.max_degree = d - 1;
    q.height_bits = hbits;
    q.precision_factor = 4 << (2 * pass);
    auto cand = min_poly_arch(refine, q);
    if (cand && cand->degree() >= 1 && cand->degree() < d && g.divides(*cand))
      return cand;
  }
  return std::nullopt;
}

bool is_irreducible(const IntPoly& f, uint64_t seed) {
  IntPoly g = f.primitive();
  if (g.degree() <= 0) return false;
  if (g.degree() == 1) return true;
  return !find_rational_factor(g, seed).has_value();
}

}  // namespace kn
