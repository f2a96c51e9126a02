#include "kronewton/newton.hpp"

#include <algorithm>

#include "kronewton/roots.hpp"

namespace kn {
namespace {

void check_square(const PolySystem& f, size_t zn) {
  if (!f.square()) fail(Errc::usage, "system is not square");
  if (static_cast<int>(zn) != f.nvars)
    fail(Errc::usage, "point dimension does not match the system");
}

void check_quadratic(const PolySystem& f) {
  if (f.max_degree() > 2)
    fail(Errc::unsupported,
         "gamma needs degree <= 2 so that higher derivative tensors vanish");
}

// Second partial derivatives, halved: hess[m][j][k] = (d_j d_k f_m)(zeta)/2.
// Symmetric in (j, k); constant in zeta for quadratic systems but evaluated
// at the point regardless.
std::vector<MatK<GaussRat>> hessian_half(const PolySystem& f,
                                         const std::vector<GaussRat>& zeta) {
  int n = f.nvars;
  std::vector<MatK<GaussRat>> h(f.neqs(), MatK<GaussRat>(n, std::vector<GaussRat>(n)));
  GaussRat half(Rat(1, 2));
  for (int m = 0; m < f.neqs(); ++m)
    for (int j = 0; j < n; ++j) {
      MultiPoly dj = f.polys[m].derivative(j);
      for (int k = j; k < n; ++k) {
        GaussRat v = dj.derivative(k).eval_gauss(zeta) * half;
        h[m][j][k] = v;
        h[m][k][j] = v;
      }
    }
  return h;
}

// Tensor slices T_i = sum_m Jinv[i][m] hess[m], exact.
std::vector<MatK<GaussRat>> tensor_exact(const PolySystem& f,
                                         const std::vector<GaussRat>& zeta) {
  auto j = f.jacobian_gauss(zeta);
  auto jinv = mat_inverse<GaussRat>(j);
  if (!jinv) fail(Errc::singular, "singular Jacobian at the zero");
  auto hess = hessian_half(f, zeta);
  int n = f.nvars;
  std::vector<MatK<GaussRat>> t(n, MatK<GaussRat>(n, std::vector<GaussRat>(n)));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        GaussRat acc;
        for (int m = 0; m < n; ++m) acc = acc + (*jinv)[i][m] * hess[m][a][b];
        t[i][a][b] = acc;
      }
  return t;
}

// Operator-norm lower bound for the bilinear tensor: ||T(., e_k)||_op <=
// ||T||_op for every unit coordinate vector, so probe each slice matrix.
RInt tensor_op_lb(const std::vector<MatC>& slices_by_k, mpfr_prec_t prec) {
  RInt best(prec);
  for (size_t k = 0; k < slices_by_k.size(); ++k)
    best = RInt::max(best, op_norm_lb(slices_by_k[k], prec, 4,
                                      0x9e3779b97f4a7c15ULL + k));
  return best;
}

GammaBall gamma_from_cint_tensor(const std::vector<std::vector<std::vector<CInt>>>& t,
                                 mpfr_prec_t prec) {
  int n = static_cast<int>(t.size());
  RInt frob_sq(prec);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) frob_sq = frob_sq + t[i][a][b].norm_sq();
  RInt frob = frob_sq.sqrt_nonneg();
  std::vector<MatC> by_k(n, MatC(n, std::vector<CInt>(n, CInt(prec))));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) by_k[k][i][a] = t[i][a][k];
  RInt lb = tensor_op_lb(by_k, prec);
  GammaBall g;
  g.frob = frob;
  g.op = RInt::hull(lb, frob);
  return g;
}

Rat rat_den(const GaussRat& x) {
  return Rat(lcm(Int(x.re.get_den()), Int(x.im.get_den())));
}

std::vector<Rat> to_rat_point(const std::vector<GaussRat>& z,
                              const char* what) {
  std::vector<Rat> r;
  r.reserve(z.size());
  for (const auto& x : z) {
    if (x.im != 0) fail(Errc::unsupported, what);
    r.push_back(x.re);
  }
  return r;
}

// Residue of a p-integral rational mod p^k, in [0, p^k).
Int residue_mod(const Rat& x, const Int& p, long k) {
  Int pk = pow_ui(p, static_cast<unsigned long>(k));
  Int den = x.get_den();
  auto dinv = invmod(mod(den, pk), pk);
  if (!dinv) fail(Errc::usage, "point is not integral at p");
  return mod(Int(x.get_num()) * *dinv, pk);
}

}  // namespace

std::vector<GaussRat> newton_step(const PolySystem& f,
                                  const std::vector<GaussRat>& z) {
  check_square(f, z.size());
  auto j = f.jacobian_gauss(z);
  auto fv = f.eval_gauss(z);
  auto delta = mat_solve<GaussRat>(j, fv);
  if (!delta) fail(Errc::singular, "singular Jacobian in a Newton step");
  std::vector<GaussRat> out;
  out.reserve(z.size());
  for (size_t i = 0; i < z.size(); ++i) out.push_back(z[i] - (*delta)[i]);
  return out;
}

Rat round_dyadic(const Rat& x, long bits) {
  if (bits < 0) fail(Errc::usage, "negative rounding precision");
  Rat scaled = x;
  mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), bits);
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_num().get_mpz_t(),
              scaled.get_den().get_mpz_t());
  Int r2 = r * 2;
  Int den(scaled.get_den());
  if (r2 > den || (r2 == den && q < 0)) q += 1;
  Rat out(q);
  mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), bits);
  out.canonicalize();
  return out;
}

GaussRat round_dyadic(const GaussRat& x, long bits) {
  return {round_dyadic(x.re, bits), round_dyadic(x.im, bits)};
}

std::vector<GaussRat> round_dyadic(const std::vector<GaussRat>& z, long bits) {
  std::vector<GaussRat> out;
  out.reserve(z.size());
  for (const auto& x : z) out.push_back(round_dyadic(x, bits));
  return out;
}

NewtonTrajectory run_newton(const PolySystem& f, const std::vector<GaussRat>& z0,
                            int steps, const Place& nu,
                            const std::vector<CInt>* zeta_box,
                            const std::vector<GaussRat>* zeta_exact,
                            long round_bits, mpfr_prec_t prec) {
  check_square(f, z0.size());
  if (steps < 0 || steps > 30) fail(Errc::usage, "step count out of range");
  NewtonTrajectory traj;
  traj.has_reference = zeta_box != nullptr || zeta_exact != nullptr;

  auto measure = [&](const std::vector<GaussRat>& z) -> RInt {
    if (zeta_box) {
      RInt s(prec);
      for (size_t i = 0; i < z.size(); ++i) {
        CInt d = CInt::from_gauss(z[i], prec) - (*zeta_box)[i];
        s = s + d.norm_sq();
      }
      return s.sqrt_nonneg();
    }
    std::vector<GaussRat> d(z.size());
    for (size_t i = 0; i < z.size(); ++i) d[i] = z[i] - (*zeta_exact)[i];
    if (nu.arch) return arch_vec_norm(d, prec);
    Rat a = padic_vec_abs(d, nu.p);
    return RInt::hull_rat(a, a, prec);
  };

  traj.points.push_back(z0);
  if (traj.has_reference) traj.err.push_back(measure(z0));
  std::vector<GaussRat> z = z0;
  for (int k = 0; k < steps; ++k) {
    z = newton_step(f, z);
    if (round_bits > 0) z = round_dyadic(z, round_bits);
    traj.points.push_back(z);
    if (traj.has_reference) traj.err.push_back(measure(z));
  }
  traj.quadratic_ok = true;
  if (traj.has_reference)
    for (size_t k = 1; k < traj.err.size(); ++k) {
      RInt cap = traj.err[0].mul_2exp(1 - (1L << k));
      if (!traj.err[k].definitely_le(cap)) traj.quadratic_ok = false;
    }
  return traj;
}

GammaBall gamma_arch(const PolySystem& f, const std::vector<CInt>& zeta,
                     mpfr_prec_t prec) {
  check_square(f, zeta.size());
  check_quadratic(f);
  int n = f.nvars;
  MatC j = f.jacobian_cint(zeta, prec);
  MatC jinv = mat_inverse_cint(j, prec);
  CInt half(prec);
  half.re = RInt::hull_rat(Rat(1, 2), Rat(1, 2), prec);
  std::vector<std::vector<std::vector<CInt>>> hess(
      n, std::vector<std::vector<CInt>>(n, std::vector<CInt>(n, CInt(prec))));
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a) {
      MultiPoly da = f.polys[m].derivative(a);
      for (int b = a; b < n; ++b) {
        CInt v = da.derivative(b).eval_cint(zeta, prec) * half;
        hess[m][a][b] = v;
        hess[m][b][a] = v;
      }
    }
  std::vector<std::vector<std::vector<CInt>>> t(
      n, std::vector<std::vector<CInt>>(n, std::vector<CInt>(n, CInt(prec))));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        CInt acc(prec);
        for (int m = 0; m < n; ++m) acc = acc + jinv[i][m] * hess[m][a][b];
        t[i][a][b] = acc;
      }
  return gamma_from_cint_tensor(t, prec);
}

GammaBall gamma_arch_point(const PolySystem& f,
                           const std::vector<GaussRat>& zeta,
                           mpfr_prec_t prec) {
  check_square(f, zeta.size());
  check_quadratic(f);
  auto t = tensor_exact(f, zeta);
  int n = f.nvars;
  Rat frob_sq;
  std::vector<std::vector<std::vector<CInt>>> tbox(
      n, std::vector<std::vector<CInt>>(n, std::vector<CInt>(n, CInt(prec))));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        frob_sq += t[i][a][b].norm();
        tbox[i][a][b] = CInt::from_gauss(t[i][a][b], prec);
      }
  GammaBall g;
  g.frob = RInt::hull_rat(frob_sq, frob_sq, prec).sqrt_nonneg();
  std::vector<MatC> by_k(n, MatC(n, std::vector<CInt>(n, CInt(prec))));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) by_k[k][i][a] = tbox[i][a][k];
  g.op = RInt::hull(tensor_op_lb(by_k, prec), g.frob);
  return g;
}

Rat gamma_padic(const PolySystem& f, const std::vector<GaussRat>& zeta,
                const Int& p) {
  check_square(f, zeta.size());
  check_quadratic(f);
  auto t = tensor_exact(f, zeta);
  Rat best(0);
  for (const auto& slice : t)
    for (const auto& row : slice)
      for (const auto& x : row) {
        if (x.is_zero()) continue;
        Rat a = padic_abs(x, p);
        if (a > best) best = a;
      }
  return best;
}

RInt gamma_padic_rint(const PolySystem& f, const std::vector<GaussRat>& zeta,
                      const Int& p, mpfr_prec_t prec) {
  check_square(f, zeta.size());
  check_quadratic(f);
  auto t = tensor_exact(f, zeta);
  RInt best(prec);
  for (const auto& slice : t)
    for (const auto& row : slice)
      for (const auto& x : row) {
        if (x.is_zero()) continue;
        best = RInt::max(best, padic_abs_rint(x, p, prec));
      }
  return best;
}

RatBall gamma_padic_box(const PolySystem& f, const std::vector<Padic>& zeta,
                        const Int& p) {
  check_square(f, zeta.size());
  check_quadratic(f);
  long aprec = zeta.empty() ? 1 : zeta[0].abs_prec();
  for (const auto& x : zeta) aprec = std::min(aprec, x.abs_prec());
  int n = f.nvars;
  MatP j = f.jacobian_padic(zeta, p, aprec);
  MatP jinv = mat_inverse_padic(j, p, aprec);
  Padic half = Padic::from_rat(Rat(1, 2), p, aprec);
  std::vector<std::vector<std::vector<Padic>>> hess(
      n, std::vector<std::vector<Padic>>(
             n, std::vector<Padic>(n, Padic::zero(p, aprec))));
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a) {
      MultiPoly da = f.polys[m].derivative(a);
      for (int b = a; b < n; ++b) {
        Padic v = da.derivative(b).eval_padic(zeta, p, aprec) * half;
        hess[m][a][b] = v;
        hess[m][b][a] = v;
      }
    }
  RatBall ball;
  ball.lb = Rat(0);
  ball.ub = Rat(0);
  bool any_undetermined = false;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Padic acc = Padic::zero(p, aprec);
        for (int m = 0; m < n; ++m) acc = acc + jinv[i][m] * hess[m][a][b];
        Rat ub = acc.abs_ub();
        Rat lb = acc.abs_lb();
        if (ub > ball.ub) ball.ub = ub;
        if (lb > ball.lb) ball.lb = lb;
        if (acc.is_zero_to_prec()) any_undetermined = true;
      }
  ball.exact = ball.lb == ball.ub && !any_undetermined;
  return ball;
}

namespace {

CertifyResult certify_common(const PolySystem& f,
                             const std::vector<GaussRat>& z, const Place& nu,
                             const RInt& dist, const RInt& gamma,
                             mpfr_prec_t prec) {
  // Hypothesis check at z itself: the certificate asserts DF(z) nonsingular.
  auto det = mat_det<GaussRat>(f.jacobian_gauss(z));
  if (det.is_zero()) fail(Errc::singular, "singular Jacobian at the point");

  RInt thr = newton_threshold(prec);
  RInt product = dist * gamma;
  CertifyResult res;
  res.cert.z = z;
  res.cert.nu = nu;
  res.cert.gamma = gamma;
  res.cert.dist = dist;
  res.cert.product = product;
  res.cert.margin = thr - product;
  if (product.definitely_le(thr)) {
    res.verdict = Verdict::accepted;
    res.cert.log = "product " + product.approx_str(8) + " <= threshold " +
                   thr.approx_str(8);
  } else if (thr.definitely_lt(product)) {
    res.verdict = Verdict::rejected;
    res.cert.log = "product " + product.approx_str(8) + " > threshold " +
                   thr.approx_str(8);
  } else {
    res.verdict = Verdict::inconclusive;
    res.cert.log = "enclosure too loose: product " + product.approx_str(8) +
                   " straddles the threshold";
  }
  return res;
}

}  // namespace

CertifyResult certify_arch(const PolySystem& f, const std::vector<GaussRat>& z,
                           const std::vector<CInt>& zeta, mpfr_prec_t prec) {
  check_square(f, z.size());
  if (zeta.size() != z.size()) fail(Errc::usage, "enclosure dimension mismatch");
  GammaBall g = gamma_arch(f, zeta, prec);
  RInt s(prec);
  for (size_t i = 0; i < z.size(); ++i) {
    CInt d = CInt::from_gauss(z[i], prec) - zeta[i];
    s = s + d.norm_sq();
  }
  return certify_common(f, z, Place::inf(), s.sqrt_nonneg(), g.op, prec);
}

CertifyResult certify_padic(const PolySystem& f, const std::vector<GaussRat>& z,
                            const std::vector<Padic>& zeta, const Int& p) {
  check_square(f, z.size());
  if (zeta.size() != z.size()) fail(Errc::usage, "enclosure dimension mismatch");
  auto zr = to_rat_point(z, "p-adic certification needs a rational point");
  RatBall g = gamma_padic_box(f, zeta, p);
  Rat dub(0), dlb(0);
  for (size_t i = 0; i < z.size(); ++i) {
    long aprec = zeta[i].abs_prec();
    Padic d = Padic::from_rat(zr[i], p, aprec) - zeta[i];
    Rat u = d.abs_ub(), l = d.abs_lb();
    if (u > dub) dub = u;
    if (l > dlb) dlb = l;
  }
  mpfr_prec_t prec = 192;
  RInt dist = RInt::hull_rat(dlb, dub, prec);
  RInt gamma = RInt::hull_rat(g.lb, g.ub, prec);
  return certify_common(f, z, Place::padic(p), dist, gamma, prec);
}

EckardtYoung eckardt_young_arch(const MatK<GaussRat>& a, mpfr_prec_t prec) {
  int n = static_cast<int>(a.size());
  auto ainv = mat_inverse<GaussRat>(a);
  if (!ainv) fail(Errc::singular, "matrix is singular");

  Rat frob_sq;
  MatC box(n, std::vector<CInt>(n, CInt(prec)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      frob_sq += (*ainv)[i][j].norm();
      box[i][j] = CInt::from_gauss((*ainv)[i][j], prec);
    }
  RInt frob = RInt::hull_rat(frob_sq, frob_sq, prec).sqrt_nonneg();
  RInt op = RInt::hull(op_norm_lb(box, prec, 6, 0x5851f42d4c957f2dULL), frob);
  RInt one = RInt::from_long(1, prec);

  EckardtYoung ey;
  ey.dist_frob = one / frob;
  ey.dist_op = one / op;

  // sigma_min(A): square root of the least eigenvalue of A^H A, located by
  // exact characteristic polynomial plus real root isolation.
  MatK<GaussRat> aha(n, std::vector<GaussRat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GaussRat acc;
      for (int k = 0; k < n; ++k) acc = acc + a[k][i].conj() * a[k][j];
      aha[i][j] = acc;
    }
  auto cp = charpoly<GaussRat>(aha);
  RatPoly cr;
  cr.c.reserve(cp.size());
  for (const auto& x : cp) {
    if (x.im != 0) fail(Errc::internal, "hermitian charpoly came out complex");
    cr.c.push_back(x.re);
  }
  cr.trim();
  IntPoly ci = IntPoly::from_rat_poly(cr);
  IntPoly sf = ci.divexact(intpoly_gcd(ci, ci.derivative()));
  auto roots = isolate_real_roots(sf);
  if (roots.empty()) fail(Errc::internal, "gram matrix with no real eigenvalue");
  RatInterval low = roots.front();
  for (const auto& iv : roots)
    if (iv.lo < low.lo) low = iv;
  Rat width(1);
  mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), prec);
  refine_real_root(sf, low, width);
  ey.sigma_min = RInt::hull_rat(low.lo, low.hi, prec).sqrt_nonneg();
  return ey;
}

Rat eckardt_young_padic(const MatK<GaussRat>& a, const Int& p) {
  auto ainv = mat_inverse<GaussRat>(a);
  if (!ainv) fail(Errc::singular, "matrix is singular");
  Rat best(0);
  for (const auto& row : *ainv)
    for (const auto& x : row) {
      if (x.is_zero()) continue;
      Rat v = padic_abs(x, p);
      if (v > best) best = v;
    }
  if (best == 0) fail(Errc::internal, "inverse matrix is zero");
  return Rat(1) / best;
}

GammaReport universal_gamma(const PolySystem& f,
                            const std::vector<GaussRat>& zeta,
                            const Int& prime_bound, mpfr_prec_t prec) {
  check_square(f, zeta.size());
  check_quadratic(f);
  for (const auto& v : f.eval_gauss(zeta))
    if (!v.is_zero()) fail(Errc::usage, "point is not an exact zero");
  auto det = mat_det<GaussRat>(f.jacobian_gauss(zeta));
  if (det.is_zero()) fail(Errc::singular, "singular Jacobian at the zero");

  GammaReport rep;
  bool gaussian = false;
  for (const auto& x : zeta)
    if (x.im != 0) gaussian = true;
  for (const auto& poly : f.polys)
    for (const auto& [e, c] : poly.terms())
      if (c.im != 0) gaussian = true;
  rep.field_degree = gaussian ? 2 : 1;

  // gamma_p <= 1 needs p-integral zeta, a unit Jacobian determinant, and an
  // invertible 2; their product covers every prime that could misbehave.
  Rat dr = det.norm();  // nonzero rational whose support contains det's
  Int divisor = 2 * abs(Int(dr.get_num())) * Int(dr.get_den());
  for (const auto& x : zeta) divisor *= Int(rat_den(x).get_num());
  rep.support_divisor = divisor;

  std::vector<Int> primes;
  for (Int p(2); p <= prime_bound; p = next_prime(p)) primes.push_back(p);
  for (const auto& [p, e] : factorize(divisor)) {
    (void)e;
    if (std::find(primes.begin(), primes.end(), p) == primes.end())
      primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());

  GammaBall arch = gamma_arch_point(f, zeta, prec);
  rep.places.push_back({Place::inf(rep.field_degree), arch.op, std::nullopt});
  RInt universal = RInt::max(RInt::from_long(1, prec), arch.op);
  for (const auto& p : primes) {
    GammaReport::Entry ent;
    ent.nu = Place::padic(p);
    bool evaluated = true;
    RInt v(prec);
    try {
      v = gamma_padic_rint(f, zeta, p, prec);
    } catch (const Error& e) {
      // Split prime with non-real data: the two places over p would need
      // separate valuations. Off the support divisor both are unit anyway,
      // so a [0, 1] enclosure is sound and contributes nothing.
      if (e.code != Errc::unsupported) throw;
      if (mpz_divisible_p(divisor.get_mpz_t(), p.get_mpz_t())) throw;
      v = RInt::hull_rat(Rat(0), Rat(1), prec);
      evaluated = false;
    }
    ent.value = v;
    bool above_one = false;
    if (evaluated) {
      try {
        Rat ex = gamma_padic(f, zeta, p);
        ent.exact = ex;
        above_one = ex > 1;
      } catch (const Error&) {
        // Half-integer valuation at p = 2: only the enclosure is available.
        above_one = v.definitely_ge_rat(Rat(1)) && !v.contains_rat(Rat(1));
      }
    }
    if (above_one) rep.support_primes.push_back(p);
    universal = universal * RInt::max(RInt::from_long(1, prec), ent.value);
    rep.places.push_back(std::move(ent));
  }
  rep.universal = universal;
  if (!rep.universal.definitely_ge_rat(Rat(1)))
    fail(Errc::internal, "universal gamma fell below 1");
  return rep;
}

BoundsReport bounds_report(const BoundsInput& in,
                           const std::optional<RInt>& log_gamma,
                           const std::optional<RInt>& log_ey,
                           mpfr_prec_t prec) {
  if (in.n < 1 || in.k_deg < 1 || in.l_deg < 1)
    fail(Errc::usage, "degrees and dimension must be positive");
  BoundsReport rep;
  rep.in = in;
  rep.log_gamma = log_gamma;
  rep.log_ey = log_ey;

  RInt ln_n = RInt::from_long(in.n, prec).log();
  RInt h = in.h;
  RInt ht = in.ht_zeta;
  RInt l = RInt::from_long(in.l_deg, prec);
  RInt k = RInt::from_long(in.k_deg, prec);
  RInt nn = RInt::from_long(in.n, prec);
  auto c = [&](long v) { return RInt::from_long(v, prec); };

  if (log_gamma) {
    rep.ht_lb_gamma =
        (*log_gamma - l * (c(5) * ln_n + c(2) * h) - c(3)) / (c(3) * l);
    rep.ht_lb_gamma_qi =
        (*log_gamma - (c(10) * ln_n + c(4) * h + c(3))) / c(6);
  }
  if (log_ey) {
    rep.ht_lb_ey = (*log_ey - l * (c(7) * ln_n + c(3) * h) - c(5)) / (c(3) * l);
    rep.ht_lb_ey_qi = (*log_ey - (c(14) * ln_n + c(6) * h + c(5))) / c(6);
  }
  rep.log_gamma_ub = c(3) * k * nn * (nn * nn + c(4) * ln_n + h + ht + c(3));
  if (in.abs_disc_l) {
    if (*in.abs_disc_l < 1) fail(Errc::usage, "discriminant must be nonzero");
    RInt logd = RInt::from_int(*in.abs_disc_l, prec).log();
    rep.ht_ub = logd / l + k * nn * (nn * nn + h + nn * ht);
  }
  return rep;
}

HenselVerdict hensel_certify(const PolySystem& f, const std::vector<Rat>& z,
                             const Int& p, long prec) {
  check_square(f, z.size());
  if (prec < 2) fail(Errc::usage, "requested precision below p^2");
  if (!is_probable_prime(p)) fail(Errc::bad_prime, "modulus is not prime");
  for (const auto& poly : f.polys)
    for (const auto& [e, c] : poly.terms())
      if (c.im != 0)
        fail(Errc::unsupported, "hensel test needs rational coefficients");
  for (const auto& x : z)
    if (valuation(Int(x.get_den()), p) != 0)
      fail(Errc::usage, "point is not integral at p");

  HenselVerdict v;
  v.p = p;
  v.prec = prec;

  std::vector<GaussRat> zg(z.begin(), z.end());
  auto fvals = f.eval_gauss(zg);
  auto det = mat_det<GaussRat>(f.jacobian_gauss(zg));
  v.det_unit = !det.is_zero() && valuation(det.re, p) == 0;

  auto min_val = [&](const std::vector<GaussRat>& vals) -> long {
    long m = prec;  // clip: anything at or beyond the target reads as prec
    for (const auto& x : vals) {
      if (x.is_zero()) continue;
      m = std::min(m, valuation(x.re, p));
    }
    return m;
  };
  v.fval = min_val(fvals);
  std::vector<GaussRat> zt = zg;

  if (v.det_unit && v.fval == 1) {
    // One quadratic step turns ||F|| <= 1/p into <= 1/p^2; the Jacobian
    // determinant keeps its unit residue since the point moves by a multiple
    // of p.
    zt = newton_step(f, zt);
    v.pre_lifts = 1;
    v.fval = min_val(f.eval_gauss(zt));
  }
  v.accepted = v.det_unit && v.fval >= 2;

  for (const auto& x : zt) v.z_test.push_back(residue_mod(x.re, p, 2));
  if (!v.accepted) return v;

  std::vector<GaussRat> zl = zt;
  long have = v.fval;
  while (have < prec) {
    zl = newton_step(f, zl);
    have = min_val(f.eval_gauss(zl));
  }
  for (const auto& x : zl) v.zeta.push_back(residue_mod(x.re, p, prec));
  return v;
}

}  // namespace kn
