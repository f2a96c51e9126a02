#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kronewton/poly.hpp"

namespace kn {

// Straight-line program over gaussian-rational scalars. Additions,
// subtractions, and multiplications by scalar-only subexpressions are free;
// the cost counters track non-scalar multiplications only.
struct Slp {
  enum class RefKind { var, scalar, temp };
  struct Ref {
    RefKind kind;
    int idx;
  };
  enum class OpKind { add, sub, mul };
  struct Op {
    OpKind kind;
    Ref a, b;
  };

  int nvars = 0;
  std::vector<GaussRat> scalars;
  std::vector<Op> ops;
  Ref out{RefKind::temp, -1};

  static Ref var(int i) { return {RefKind::var, i}; }
  static Ref sc(int i) { return {RefKind::scalar, i}; }
  static Ref tmp(int i) { return {RefKind::temp, i}; }

  int push(OpKind k, Ref a, Ref b) {
    ops.push_back({k, a, b});
    return static_cast<int>(ops.size()) - 1;
  }

  void validate() const;

  // Non-scalar multiplication count L (clamped to >= 1 by callers that need
  // the witness bounds) and non-scalar depth.
  long mult_count() const;
  long nonscalar_depth() const;
  // Height of the scalar set: max over scalars of the normalized height
  // integer (>= 1). The empty scalar set gives 1.
  Int scalar_height_int() const;

  GaussRat eval_gauss(const std::vector<GaussRat>& pt) const;
  // Exact evaluation that aborts with Errc::budget once any intermediate's
  // normalized height exceeds 2^budget_bits.
  GaussRat eval_gauss_budget(const std::vector<GaussRat>& pt,
                             long budget_bits) const;
  // Evaluation mod m. Gaussian scalars need i_image^2 = -1 mod m; scalar
  // denominators must be invertible mod m (Errc::bad_prime otherwise).
  Int eval_mod(const std::vector<Int>& pt, const Int& m,
               const std::optional<Int>& i_image) const;

  // Expands the program into an explicit polynomial (exponential worst case;
  // intended for small programs and test oracles). The value equals num/den.
  struct Expanded {
    MultiPoly num;
    Int den;
  };
  Expanded expand_scaled() const;
  // Expansion that requires an integral result.
  MultiPoly expand() const;

  bool has_gaussian_scalars() const;
};

// Straightforward compilation of a sparse polynomial: cached variable powers
// plus one chain of multiplications per term. The non-scalar multiplication
// count is at most sum over terms of (total degree - 1).
Slp compile_to_slp(const MultiPoly& f);

}  // namespace kn
