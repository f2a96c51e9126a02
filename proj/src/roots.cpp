#include "kronewton/roots.hpp"

#include <algorithm>

namespace kn {

namespace {

// Clears denominators and the (positive) content without touching the sign,
// so sign sequences computed from the result stay valid.
IntPoly int_clear_keep_sign(const RatPoly& f) {
  Int den(1);
  for (const auto& c : f.c) den = lcm(den, c.get_den());
  IntPoly g;
  g.c.reserve(f.c.size());
  for (const auto& c : f.c) {
    Rat t = c * Rat(den);
    g.c.push_back(t.get_num());
  }
  g.trim();
  if (g.is_zero()) return g;
  Int ct = g.content();
  for (auto& x : g.c) x /= ct;
  return g;
}

std::vector<IntPoly> sturm_chain(const IntPoly& f) {
  std::vector<IntPoly> ch;
  IntPoly s0 = f;
  Int c0 = s0.content();
  for (auto& x : s0.c) x /= c0;
  ch.push_back(s0);
  IntPoly s1 = int_clear_keep_sign(s0.derivative().to_rat());
  if (s1.is_zero()) return ch;
  ch.push_back(s1);
  while (true) {
    const IntPoly& a = ch[ch.size() - 2];
    const IntPoly& b = ch.back();
    auto [q, r] = a.to_rat().divmod(b.to_rat());
    (void)q;
    IntPoly nr = int_clear_keep_sign(r);
    if (nr.is_zero()) break;
    for (auto& x : nr.c) x = -x;
    ch.push_back(nr);
    if (ch.back().degree() == 0) break;
  }
  return ch;
}

int sgn_rat(const Rat& x) { return sgn(x.get_num()); }

// Sign variations of the chain at x; x must avoid roots of the first entry.
int variations_at(const std::vector<IntPoly>& ch, const Rat& x) {
  int v = 0, prev = 0;
  for (const auto& p : ch) {
    int s = sgn_rat(p.eval_rat(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

Rat cauchy_bound(const IntPoly& f) {
  Int lead = abs(f.lead());
  Int top(0);
  for (size_t i = 0; i + 1 < f.c.size(); ++i) top = std::max(top, abs(f.c[i]));
  return Rat(1) + Rat(top) / Rat(lead);
}

}  // namespace

std::vector<RatInterval> isolate_real_roots(const IntPoly& f) {
  if (f.is_zero()) fail(Errc::usage, "real root isolation: zero polynomial");
  if (f.degree() == 0) return {};
  if (!is_squarefree(f)) fail(Errc::usage, "real root isolation needs a squarefree input");
  auto ch = sturm_chain(f);
  Rat B = cauchy_bound(f);
  std::vector<RatInterval> out;
  struct Node {
    Rat a, b;
    int va, vb;
  };
  std::vector<Node> stack;
  stack.push_back({-B, B, variations_at(ch, -B), variations_at(ch, B)});
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    int cnt = nd.va - nd.vb;
    if (cnt <= 0) continue;
    if (cnt == 1 && sgn_rat(f.eval_rat(nd.a)) * sgn_rat(f.eval_rat(nd.b)) < 0) {
      out.push_back({nd.a, nd.b});
      continue;
    }
    Rat m = (nd.a + nd.b) / 2;
    if (sgn_rat(f.eval_rat(m)) == 0) {
      out.push_back({m, m});
      // Shrink a symmetric gap around the exact root so the two flanking
      // intervals exclude it.
      Rat w = (nd.b - nd.a) / 4;
      while (sgn_rat(f.eval_rat(m - w)) == 0 || sgn_rat(f.eval_rat(m + w)) == 0 ||
             variations_at(ch, m - w) - variations_at(ch, m + w) != 1) {
        w /= 2;
      }
      stack.push_back({nd.a, m - w, nd.va, variations_at(ch, m - w)});
      stack.push_back({m + w, nd.b, variations_at(ch, m + w), nd.vb});
    } else {
      int vm = variations_at(ch, m);
      stack.push_back({nd.a, m, nd.va, vm});
      stack.push_back({m, nd.b, vm, nd.vb});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RatInterval& x, const RatInterval& y) { return x.lo < y.lo; });
  return out;
}

void refine_real_root(const IntPoly& f, RatInterval& iv, const Rat& width) {
  if (iv.lo == iv.hi) return;
  int sa = sgn_rat(f.eval_rat(iv.lo));
  while (iv.hi - iv.lo > width) {
    Rat m = iv.mid();
    int sm = sgn_rat(f.eval_rat(m));
    if (sm == 0) {
      iv.lo = iv.hi = m;
      return;
    }
    if (sm == sa)
      iv.lo = m;
    else
      iv.hi = m;
  }
}

int count_real_roots(const IntPoly& f) {
  if (f.is_zero()) fail(Errc::usage, "root count: zero polynomial");
  if (f.degree() == 0) return 0;
  IntPoly fp = f.primitive();
  IntPoly g = intpoly_gcd(fp, fp.derivative());
  IntPoly sf = g.degree() == 0 ? fp : fp.divexact(g);
  auto ch = sturm_chain(sf);
  Rat B = cauchy_bound(sf);
  return variations_at(ch, -B) - variations_at(ch, B);
}

namespace {

// Heuristic stage: Durand-Kerner at floating precision w. Certification never
// trusts these values, so rounding behavior is irrelevant here.
struct Cf {
  mpf_class re, im;
  Cf(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}
  Cf operator+(const Cf& o) const { return {re + o.re, im + o.im}; }
  Cf operator-(const Cf& o) const { return {re - o.re, im - o.im}; }
  Cf operator*(const Cf& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cf operator/(const Cf& o) const {
    mpf_class n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  mpf_class norm() const { return re * re + im * im; }
};

std::vector<Cf> durand_kerner(const IntPoly& f, mpfr_prec_t w) {
  int d = f.degree();
  std::vector<Cf> c;  // monic coefficients c_0..c_{d-1}
  mpf_class lead(f.lead(), w);
  c.reserve(d);
  for (int i = 0; i < d; ++i) c.emplace_back(mpf_class(f.c[i], w) / lead, mpf_class(0, w));
  mpf_class R(1, w);
  for (int i = 0; i < d; ++i) {
    mpf_class a = abs(c[i].re);
    if (a > R) R = a;
  }
  R = R + 1;
  auto feval = [&](const Cf& z) {
    Cf acc(mpf_class(1, w), mpf_class(0, w));
    for (int i = d - 1; i >= 0; --i) acc = acc * z + c[i];
    return acc;
  };
  std::vector<Cf> z;
  Cf u(mpf_class(0.4, w), mpf_class(0.9, w));
  Cf pw = u;
  for (int k = 0; k < d; ++k) {
    z.emplace_back(pw.re * R, pw.im * R);
    pw = pw * u;
  }
  mpf_class tol = R * R;
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), 2 * (static_cast<unsigned long>(w) - 8));
  int iters = 60 + 20 * d;
  for (int it = 0; it < iters; ++it) {
    mpf_class worst(0, w);
    for (int k = 0; k < d; ++k) {
      Cf den(mpf_class(1, w), mpf_class(0, w));
      for (int j = 0; j < d; ++j)
        if (j != k) den = den * (z[k] - z[j]);
      if (den.norm() == 0) {
        z[k].re += R / (k + 3);
        continue;
      }
      Cf delta = feval(z[k]) / den;
      z[k] = z[k] - delta;
      mpf_class n = delta.norm();
      if (n > worst) worst = n;
    }
    if (worst <= tol) break;
  }
  return z;
}

GaussRat to_gauss_rat(const Cf& z) {
  mpq_class re, im;
  mpq_set_f(re.get_mpq_t(), z.re.get_mpf_t());
  mpq_set_f(im.get_mpq_t(), z.im.get_mpf_t());
  return {Rat(re), Rat(im)};
}

// Distance bound to the nearest root: deg * |f(c)| / |f'(c)|. Fails (returns
// false) when |f'(c)| is not bounded away from zero at this precision.
bool disk_radius(const IntPoly& f, const GaussRat& c, mpfr_prec_t w, Rat& r_out) {
  CInt zc{RInt::from_rat(c.re, w), RInt::from_rat(c.im, w)};
  CInt fv = f.eval_cint(zc, w);
  CInt dv = f.eval_deriv_cint(zc, w);
  RInt da = dv.abs();
  if (!da.is_positive()) return false;
  if (fv.contains(GaussRat{Rat(0), Rat(0)})) {
    GaussRat exact = f.to_gauss().eval(c);
    if (exact.re == 0 && exact.im == 0) {
      r_out = Rat(0);
      return true;
    }
  }
  RInt ratio = fv.abs() / da;
  r_out = Rat(f.degree()) * ratio.hi_rat();
  return true;
}

Rat dist_sq(const GaussRat& a, const GaussRat& b) {
  Rat dr = a.re - b.re, di = a.im - b.im;
  return dr * dr + di * di;
}

bool pairwise_disjoint(const std::vector<RootDisk>& disks) {
  for (size_t i = 0; i < disks.size(); ++i)
    for (size_t j = i + 1; j < disks.size(); ++j) {
      Rat s = disks[i].radius + disks[j].radius;
      if (dist_sq(disks[i].center, disks[j].center) <= s * s) return false;
    }
  return true;
}

void sort_disks(std::vector<RootDisk>& disks) {
  std::sort(disks.begin(), disks.end(), [](const RootDisk& a, const RootDisk& b) {
    if (a.center.re != b.center.re) return a.center.re < b.center.re;
    return a.center.im < b.center.im;
  });
}

}  // namespace

CInt RootDisk::box(mpfr_prec_t prec) const {
  return {RInt::hull_rat(center.re - radius, center.re + radius, prec),
          RInt::hull_rat(center.im - radius, center.im + radius, prec)};
}

std::vector<RootDisk> isolate_complex_roots(const IntPoly& f, mpfr_prec_t prec) {
  if (f.is_zero()) fail(Errc::usage, "complex root isolation: zero polynomial");
  int d = f.degree();
  if (d == 0) return {};
  if (!is_squarefree(f)) fail(Errc::usage, "complex root isolation needs a squarefree input");
  if (d == 1) {
    Rat root = -Rat(f.c[0]) / Rat(f.c[1]);
    return {RootDisk{GaussRat{root, Rat(0)}, Rat(0)}};
  }
  mpfr_prec_t w = std::max<mpfr_prec_t>(prec, 64);
  for (int attempt = 0; attempt < 8; ++attempt, w *= 2) {
    auto approx = durand_kerner(f, w);
    std::vector<RootDisk> disks;
    bool ok = true;
    for (const auto& z : approx) {
      Rat r;
      if (!disk_radius(f, to_gauss_rat(z), w + 64, r)) {
        ok = false;
        break;
      }
      disks.push_back({to_gauss_rat(z), r});
    }
    if (!ok || !pairwise_disjoint(disks)) continue;
    sort_disks(disks);
    return disks;
  }
  fail(Errc::inconclusive, "complex root isolation did not converge");
}

RootDisk refine_complex_root(const IntPoly& f, const RootDisk& disk,
                             mpfr_prec_t prec) {
  Rat target = Rat(1) / (Int(1) << static_cast<unsigned>(prec));
  target *= 2;
  if (disk.radius <= target) return disk;
  int d = f.degree();
  mpfr_prec_t w = std::max<mpfr_prec_t>(64, prec + 64);
  GaussRat c = disk.center;
  for (int attempt = 0; attempt < 10; ++attempt, w *= 2) {
    GaussRat z = c;
    for (int it = 0; it < 64; ++it) {
      CInt zc{RInt::from_rat(z.re, w), RInt::from_rat(z.im, w)};
      CInt fv = f.eval_cint(zc, w);
      CInt dv = f.eval_deriv_cint(zc, w);
      if (!dv.abs().is_positive()) break;
      CInt step = fv / dv;
      GaussRat zn{z.re - step.re.mid_rat(), z.im - step.im.mid_rat()};
      // Round to about w bits so denominators stay bounded across steps.
      auto dyadic = [&](const Rat& x) -> Rat {
        Int scale = Int(1) << static_cast<unsigned>(w);
        Rat t = x * Rat(scale);
        Int n = t.get_num() / t.get_den();
        return Rat(n) / Rat(scale);
      };
      zn = {dyadic(zn.re), dyadic(zn.im)};
      Rat r;
      if (disk_radius(f, zn, w, r) && r * Rat(4 * d) <= target) {
        Rat drift_sq = dist_sq(zn, disk.center);
        Rat room = disk.radius - r * Rat(2);
        if (disk.radius == 0 || (room > 0 && drift_sq <= room * room)) {
          // New disk (doubled radius for slack) sits inside the old one, so
          // it encloses the same root.
          return {zn, r * 2};
        }
      }
      z = zn;
    }
  }
  fail(Errc::inconclusive, "complex root refinement did not converge");
}

std::vector<RootDisk> refined_complex_roots(const IntPoly& f, mpfr_prec_t prec) {
  auto disks = isolate_complex_roots(f, 64);
  for (auto& dk : disks) dk = refine_complex_root(f, dk, prec);
  if (!pairwise_disjoint(disks)) fail(Errc::internal, "refined disks overlap");
  sort_disks(disks);
  return disks;
}

}  // namespace kn
