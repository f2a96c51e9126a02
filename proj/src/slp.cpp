#include "kronewton/slp.hpp"
#include "kronewton/place.hpp"

namespace kn {

void Slp::validate() const {
  auto check_ref = [&](const Ref& r, int opidx) {
    switch (r.kind) {
      case RefKind::var:
        if (r.idx < 0 || r.idx >= nvars) fail(Errc::usage, "slp: bad var ref");
        break;
      case RefKind::scalar:
        if (r.idx < 0 || r.idx >= static_cast<int>(scalars.size()))
          fail(Errc::usage, "slp: bad scalar ref");
        break;
      case RefKind::temp:
        if (r.idx < 0 || r.idx >= opidx)
          fail(Errc::usage, "slp: temp ref must point to an earlier op");
        break;
    }
  };
  for (size_t i = 0; i < ops.size(); ++i) {
    check_ref(ops[i].a, static_cast<int>(i));
    check_ref(ops[i].b, static_cast<int>(i));
  }
  if (ops.empty()) {
    if (out.kind == RefKind::temp) fail(Errc::usage, "slp: empty program");
    check_ref(out, 0);
  } else {
    check_ref(out, static_cast<int>(ops.size()));
  }
}

namespace {

// Per-node scalar flags: true when the value cannot depend on the inputs.
std::vector<bool> scalar_flags(const Slp& s) {
  std::vector<bool> flag(s.ops.size());
  auto ref_flag = [&](const Slp::Ref& r) {
    switch (r.kind) {
      case Slp::RefKind::var: return false;
      case Slp::RefKind::scalar: return true;
      default: return static_cast<bool>(flag[r.idx]);
    }
  };
  for (size_t i = 0; i < s.ops.size(); ++i)
    flag[i] = ref_flag(s.ops[i].a) && ref_flag(s.ops[i].b);
  return flag;
}

}  // namespace

long Slp::mult_count() const {
  auto flag = scalar_flags(*this);
  auto ref_flag = [&](const Ref& r) {
    switch (r.kind) {
      case RefKind::var: return false;
      case RefKind::scalar: return true;
      default: return static_cast<bool>(flag[r.idx]);
    }
  };
  long L = 0;
  for (const auto& op : ops)
    if (op.kind == OpKind::mul && !ref_flag(op.a) && !ref_flag(op.b)) ++L;
  return L;
}

long Slp::nonscalar_depth() const {
  auto flag = scalar_flags(*this);
  std::vector<long> depth(ops.size(), 0);
  auto ref_depth = [&](const Ref& r) -> long {
    return r.kind == RefKind::temp ? depth[r.idx] : 0;
  };
  auto ref_flag = [&](const Ref& r) {
    switch (r.kind) {
      case RefKind::var: return false;
      case RefKind::scalar: return true;
      default: return static_cast<bool>(flag[r.idx]);
    }
  };
  for (size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    long d = std::max(ref_depth(op.a), ref_depth(op.b));
    if (op.kind == OpKind::mul && !ref_flag(op.a) && !ref_flag(op.b)) d += 1;
    depth[i] = d;
  }
  return out.kind == RefKind::temp ? depth[out.idx] : 0;
}

Int Slp::scalar_height_int() const {
  Int h = 1;
  for (const auto& s : scalars) {
    Int m = height_int(s);
    if (m > h) h = m;
  }
  return h;
}

GaussRat Slp::eval_gauss(const std::vector<GaussRat>& pt) const {
  return eval_gauss_budget(pt, -1);
}

GaussRat Slp::eval_gauss_budget(const std::vector<GaussRat>& pt,
                                long budget_bits) const {
  if (static_cast<int>(pt.size()) != nvars) fail(Errc::usage, "slp: point arity");
  std::vector<GaussRat> t(ops.size());
  auto get = [&](const Ref& r) -> const GaussRat& {
    switch (r.kind) {
      case RefKind::var: return pt[r.idx];
      case RefKind::scalar: return scalars[r.idx];
      default: return t[r.idx];
    }
  };
  for (size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    switch (op.kind) {
      case OpKind::add: t[i] = get(op.a) + get(op.b); break;
      case OpKind::sub: t[i] = get(op.a) - get(op.b); break;
      case OpKind::mul: t[i] = get(op.a) * get(op.b); break;
    }
    if (budget_bits >= 0 &&
        static_cast<long>(bit_length(height_int(t[i]))) > budget_bits)
      fail(Errc::budget, "slp: exact evaluation exceeds bit budget");
  }
  return get(out);
}

Int Slp::eval_mod(const std::vector<Int>& pt, const Int& m,
                  const std::optional<Int>& i_image) const {
  if (static_cast<int>(pt.size()) != nvars) fail(Errc::usage, "slp: point arity");
  auto embed_scalar = [&](const GaussRat& s) -> Int {
    auto embed_rat = [&](const Rat& x) -> Int {
      auto inv = invmod(mod(Int(x.get_den()), m), m);
      if (!inv) fail(Errc::bad_prime, "scalar denominator not invertible");
      return mod(mod(Int(x.get_num()), m) * *inv, m);
    };
    Int re = embed_rat(s.re);
    if (s.im == 0) return re;
    if (!i_image) fail(Errc::bad_prime, "gaussian scalar without i image");
    return mod(re + embed_rat(s.im) * *i_image, m);
  };
  std::vector<Int> t(ops.size());
  auto get = [&](const Ref& r) -> Int {
    switch (r.kind) {
      case RefKind::var: return mod(pt[r.idx], m);
      case RefKind::scalar: return embed_scalar(scalars[r.idx]);
      default: return t[r.idx];
    }
  };
  for (size_t i = 0; i < ops.size(); ++i) {
    const auto& op = ops[i];
    switch (op.kind) {
      case OpKind::add: t[i] = mod(get(op.a) + get(op.b), m); break;
      case OpKind::sub: t[i] = mod(get(op.a) - get(op.b), m); break;
      case OpKind::mul: t[i] = mod(get(op.a) * get(op.b), m); break;
    }
  }
  return get(out);
}

Slp::Expanded Slp::expand_scaled() const {
  // Tracks each node as an integer-coefficient polynomial over a positive
  // denominator.
  struct Val {
    MultiPoly num;  // gaussian-integer coefficients
    Int den;        // positive
  };
  auto norm = [](Val v) {
    // Divide out the gcd of den and the content of num.
    Int g = v.den;
    for (const auto& [e, c] : v.num.terms()) {
      g = gcd(g, gcd(kn::abs(c.re), kn::abs(c.im)));
      if (g == 1) break;
    }
    if (g > 1) {
      MultiPoly scaled(v.num.nvars());
      for (const auto& [e, c] : v.num.terms())
        scaled.add_term(e, GaussInt(c.re / g, c.im / g));
      v.num = scaled;
      v.den /= g;
    }
    return v;
  };
  auto from_scalar = [&](const GaussRat& s) -> Val {
    Int d = lcm(Int(s.re.get_den()), Int(s.im.get_den()));
    GaussInt c(Int(s.re.get_num()) * (d / Int(s.re.get_den())),
               Int(s.im.get_num()) * (d / Int(s.im.get_den())));
    return {MultiPoly::constant(nvars, c), d};
  };
  std::vector<Val> t;
  t.reserve(ops.size());
  auto get = [&](const Ref& r) -> Val {
    switch (r.kind) {
      case RefKind::var: return {MultiPoly::variable(nvars, r.idx), Int(1)};
      case RefKind::scalar: return from_scalar(scalars[r.idx]);
      default: return t[r.idx];
    }
  };
  for (const auto& op : ops) {
    Val a = get(op.a), b = get(op.b);
    Val r{MultiPoly(nvars), Int(1)};
    switch (op.kind) {
      case OpKind::add:
        r.den = lcm(a.den, b.den);
        r.num = a.num.scale(GaussInt(r.den / a.den)) +
                b.num.scale(GaussInt(r.den / b.den));
        break;
      case OpKind::sub:
        r.den = lcm(a.den, b.den);
        r.num = a.num.scale(GaussInt(r.den / a.den)) -
                b.num.scale(GaussInt(r.den / b.den));
        break;
      case OpKind::mul:
        r.den = a.den * b.den;
        r.num = a.num * b.num;
        break;
    }
    t.push_back(norm(r));
  }
  Val res = get(out);
  return {res.num, res.den};
}

MultiPoly Slp::expand() const {
  Expanded e = expand_scaled();
  if (e.den != 1)
    fail(Errc::unsupported, "slp expansion has a non-integral denominator");
  return e.num;
}

bool Slp::has_gaussian_scalars() const {
  for (const auto& s : scalars)
    if (!s.is_rational()) return true;
  return false;
}

Slp compile_to_slp(const MultiPoly& f) {
  Slp s;
  s.nvars = f.nvars();
  if (f.is_zero()) {
    s.scalars.push_back(GaussRat(Rat(0)));
    s.out = Slp::sc(0);
    return s;
  }
  // Power cache: pow_ref[v][k] holds a ref to X_v^k.
  std::vector<unsigned> maxdeg(f.nvars(), 0);
  for (const auto& [e, c] : f.terms())
    for (int v = 0; v < f.nvars(); ++v) maxdeg[v] = std::max(maxdeg[v], e[v]);
  std::vector<std::vector<Slp::Ref>> pow_ref(f.nvars());
  for (int v = 0; v < f.nvars(); ++v) {
    pow_ref[v].resize(maxdeg[v] + 1, Slp::var(v));
    for (unsigned k = 2; k <= maxdeg[v]; ++k) {
      int idx = s.push(Slp::OpKind::mul, pow_ref[v][k - 1], Slp::var(v));
      pow_ref[v][k] = Slp::tmp(idx);
    }
  }
  std::optional<Slp::Ref> acc;
  for (const auto& [e, c] : f.terms()) {
    s.scalars.push_back(GaussRat(c));
    Slp::Ref term = Slp::sc(static_cast<int>(s.scalars.size()) - 1);
    for (int v = 0; v < f.nvars(); ++v) {
      if (e[v] == 0) continue;
      int idx = s.push(Slp::OpKind::mul, term, pow_ref[v][e[v]]);
      term = Slp::tmp(idx);
    }
    if (!acc) {
      acc = term;
    } else {
      int idx = s.push(Slp::OpKind::add, *acc, term);
      acc = Slp::tmp(idx);
    }
  }
  s.out = *acc;
  s.validate();
  return s;
}

}  // namespace kn
