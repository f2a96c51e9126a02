#include "kronewton/poly.hpp"

namespace kn {

MultiPoly MultiPoly::constant(int nvars, GaussInt c) {
  MultiPoly f(nvars);
  if (!c.is_zero()) f.terms_[ExpoVec(nvars, 0)] = std::move(c);
  return f;
}

MultiPoly MultiPoly::variable(int nvars, int v, unsigned e) {
  MultiPoly f(nvars);
  ExpoVec ev(nvars, 0);
  ev[v] = e;
  f.terms_[ev] = GaussInt(Int(1));
  return f;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, expo_total(e));
  return d;
}

unsigned MultiPoly::degree_in(int v) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

Int MultiPoly::coeff_height_int() const {
  Int h = 1;
  for (const auto& [e, c] : terms_) {
    Int m = std::max(kn::abs(c.re), kn::abs(c.im));
    if (m > h) h = m;
  }
  return h;
}

void MultiPoly::add_term(const ExpoVec& e, const GaussInt& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      ExpoVec e(nvars_);
      for (int v = 0; v < nvars_; ++v) e[v] = e1[v] + e2[v];
      r.add_term(e, c1 * c2);
    }
  return r;
}

MultiPoly MultiPoly::scale(const GaussInt& c) const {
  MultiPoly r(nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly acc = constant(nvars_, GaussInt(Int(1)));
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(int v) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    ExpoVec e2 = e;
    e2[v] -= 1;
    r.add_term(e2, c * GaussInt(Int(e[v])));
  }
  return r;
}

MultiPoly MultiPoly::substitute_scaled(int v, const MultiPoly& g,
                                       const GaussInt& c) const {
  unsigned K = degree_in(v);
  // Group by the exponent of X_v.
  std::map<unsigned, MultiPoly> slices;
  for (const auto& [e, k] : terms_) {
    ExpoVec e2 = e;
    unsigned ev = e2[v];
    e2[v] = 0;
    auto it = slices.find(ev);
    if (it == slices.end()) it = slices.emplace(ev, MultiPoly(nvars_)).first;
    it->second.add_term(e2, k);
  }
  MultiPoly r(nvars_);
  for (const auto& [ev, slice] : slices) {
    GaussInt cf(Int(1));
    for (unsigned i = 0; i < K - ev; ++i) cf = cf * c;
    r = r + slice.scale(cf) * g.pow(ev);
  }
  return r;
}

bool MultiPoly::uses_var(int v) const {
  for (const auto& [e, c] : terms_)
    if (e[v] > 0) return true;
  return false;
}

namespace {

// Power tables shared by the concrete evaluators.
template <class R>
std::vector<std::vector<R>> power_tables(const MultiPoly& f,
                                         const std::vector<R>& pt, const R& one) {
  int n = f.nvars();
  std::vector<unsigned> maxdeg(n, 0);
  for (const auto& [e, c] : f.terms())
    for (int v = 0; v < n; ++v) maxdeg[v] = std::max(maxdeg[v], e[v]);
  std::vector<std::vector<R>> pows(n);
  for (int v = 0; v < n; ++v) {
    pows[v].reserve(maxdeg[v] + 1);
    pows[v].push_back(one);
    for (unsigned k = 1; k <= maxdeg[v]; ++k)
      pows[v].push_back(pows[v].back() * pt[v]);
  }
  return pows;
}

}  // namespace

GaussRat MultiPoly::eval_gauss(const std::vector<GaussRat>& pt) const {
  if (static_cast<int>(pt.size()) != nvars_) fail(Errc::usage, "point arity");
  auto pows = power_tables(*this, pt, GaussRat(Rat(1)));
  GaussRat acc;
  for (const auto& [e, c] : terms_) {
    GaussRat t(c);
    for (int v = 0; v < nvars_; ++v)
      if (e[v] > 0) t = t * pows[v][e[v]];
    acc = acc + t;
  }
  return acc;
}

CInt MultiPoly::eval_cint(const std::vector<CInt>& pt, mpfr_prec_t prec) const {
  if (static_cast<int>(pt.size()) != nvars_) fail(Errc::usage, "point arity");
  CInt one(prec);
  one.re = RInt::from_long(1, prec);
  auto pows = power_tables(*this, pt, one);
  CInt acc(prec);
  for (const auto& [e, c] : terms_) {
    CInt t = CInt::from_gauss(GaussRat(c), prec);
    for (int v = 0; v < nvars_; ++v)
      if (e[v] > 0) t = t * pows[v][e[v]];
    acc = acc + t;
  }
  return acc;
}

Padic MultiPoly::eval_padic(const std::vector<Padic>& pt, const Int& p,
                            long aprec) const {
  if (static_cast<int>(pt.size()) != nvars_) fail(Errc::usage, "point arity");
  Padic one = Padic::from_int(1, p, aprec);
  auto pows = power_tables(*this, pt, one);
  Padic acc = Padic::zero(p, aprec);
  for (const auto& [e, c] : terms_) {
    if (!c.is_rational())
      fail(Errc::unsupported, "gaussian coefficient in p-adic evaluation");
    Padic t = Padic::from_rat(Rat(c.re), p, aprec);
    for (int v = 0; v < nvars_; ++v)
      if (e[v] > 0) t = t * pows[v][e[v]];
    acc = acc + t;
  }
  return acc;
}

Int MultiPoly::eval_mod(const std::vector<Int>& pt, const Int& m,
                        const std::optional<Int>& i_image) const {
  if (static_cast<int>(pt.size()) != nvars_) fail(Errc::usage, "point arity");
  std::vector<Int> red(pt.size());
  for (size_t i = 0; i < pt.size(); ++i) red[i] = mod(pt[i], m);
  Int one = 1;
  auto mulm = [&](const Int& a, const Int& b) { return mod(a * b, m); };
  int n = nvars_;
  std::vector<unsigned> maxdeg(n, 0);
  for (const auto& [e, c] : terms_)
    for (int v = 0; v < n; ++v) maxdeg[v] = std::max(maxdeg[v], e[v]);
  std::vector<std::vector<Int>> pows(n);
  for (int v = 0; v < n; ++v) {
    pows[v].push_back(one);
    for (unsigned k = 1; k <= maxdeg[v]; ++k)
      pows[v].push_back(mulm(pows[v].back(), red[v]));
  }
  Int acc = 0;
  for (const auto& [e, c] : terms_) {
    Int t;
    if (c.is_rational()) {
      t = mod(c.re, m);
    } else {
      if (!i_image)
        fail(Errc::unsupported, "gaussian coefficient without an i image mod m");
      t = mod(c.re + c.im * *i_image, m);
    }
    for (int v = 0; v < n; ++v)
      if (e[v] > 0) t = mulm(t, pows[v][e[v]]);
    acc = mod(acc + t, m);
  }
  return acc;
}

unsigned PolySystem::max_degree() const {
  unsigned d = 0;
  for (const auto& f : polys) d = std::max(d, f.total_degree());
  return d;
}

Int PolySystem::coeff_height_int() const {
  Int h = 1;
  for (const auto& f : polys) {
    Int m = f.coeff_height_int();
    if (m > h) h = m;
  }
  return h;
}

std::vector<GaussRat> PolySystem::eval_gauss(const std::vector<GaussRat>& pt) const {
  std::vector<GaussRat> out;
  out.reserve(polys.size());
  for (const auto& f : polys) out.push_back(f.eval_gauss(pt));
  return out;
}

std::vector<std::vector<GaussRat>> PolySystem::jacobian_gauss(
    const std::vector<GaussRat>& pt) const {
  std::vector<std::vector<GaussRat>> J(polys.size());
  for (size_t i = 0; i < polys.size(); ++i) {
    J[i].reserve(nvars);
    for (int v = 0; v < nvars; ++v)
      J[i].push_back(polys[i].derivative(v).eval_gauss(pt));
  }
  return J;
}

std::vector<std::vector<CInt>> PolySystem::jacobian_cint(
    const std::vector<CInt>& pt, mpfr_prec_t prec) const {
  std::vector<std::vector<CInt>> J(polys.size());
  for (size_t i = 0; i < polys.size(); ++i) {
    for (int v = 0; v < nvars; ++v)
      J[i].push_back(polys[i].derivative(v).eval_cint(pt, prec));
  }
  return J;
}

std::vector<std::vector<Padic>> PolySystem::jacobian_padic(
    const std::vector<Padic>& pt, const Int& p, long aprec) const {
  std::vector<std::vector<Padic>> J(polys.size());
  for (size_t i = 0; i < polys.size(); ++i) {
    for (int v = 0; v < nvars; ++v)
      J[i].push_back(polys[i].derivative(v).eval_padic(pt, p, aprec));
  }
  return J;
}

PolySystem mignotte_system(int n) {
  if (n < 2) fail(Errc::usage, "chain example needs n >= 2");
  int N = n + 1;
  PolySystem F;
  F.nvars = N;
  auto X = [&](int i) { return MultiPoly::variable(N, i); };
  auto C = [&](long c) { return MultiPoly::constant(N, GaussInt(Int(c))); };
  // f1 = X1 - 2
  F.polys.push_back(X(0) - C(2));
  // f_i = X_i - X_{i-1}^2 for 2 <= i <= n-1
  for (int i = 2; i <= n - 1; ++i)
    F.polys.push_back(X(i - 1) - X(i - 2) * X(i - 2));
  // f_n = X_{n+1} - X_n^2
  F.polys.push_back(X(n) - X(n - 1) * X(n - 1));
  // f_{n+1} = X_{n+1} X_n - 2 (X_{n-1} X_n - 1)^2
  MultiPoly inner = X(n - 2) * X(n - 1) - C(1);
  F.polys.push_back(X(n) * X(n - 1) - C(2) * inner * inner);
  return F;
}

PolySystem deform_system(const PolySystem& f) {
  PolySystem g;
  g.nvars = f.nvars + 1;
  for (const auto& p : f.polys) {
    MultiPoly q(g.nvars);
    for (const auto& [e, c] : p.terms()) {
      ExpoVec e2 = e;
      e2.push_back(0);
      q.add_term(e2, c);
    }
    g.polys.push_back(q);
  }
  int last = g.nvars - 1;
  int prev = g.nvars - 2;
  MultiPoly xl = MultiPoly::variable(g.nvars, last);
  MultiPoly xp = MultiPoly::variable(g.nvars, prev);
  MultiPoly one = MultiPoly::constant(g.nvars, GaussInt(Int(1)));
  g.polys.push_back((xl - xp) * (xl - xp - one));
  return g;
}

}  // namespace kn
