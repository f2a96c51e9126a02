#pragma once

#include "kronewton/upoly.hpp"

namespace kn {

// Real root isolation for a squarefree integer polynomial via Sturm chains.
// Each box either has lo == hi (an exact rational root) or satisfies
// f(lo) f(hi) < 0 with exactly one root strictly inside.
struct RatInterval {
  Rat lo, hi;
  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
};

std::vector<RatInterval> isolate_real_roots(const IntPoly& f);
void refine_real_root(const IntPoly& f, RatInterval& iv, const Rat& width);
int count_real_roots(const IntPoly& f);

// Complex roots of a squarefree integer polynomial. Each disk is certified to
// contain exactly one root: radius bound deg * |f(c)/f'(c)| plus pairwise
// disjointness of all deg disks. Deterministic order (by center).
struct RootDisk {
  GaussRat center;
  Rat radius;      // upper bound, may be 0 for exact roots
  CInt box(mpfr_prec_t prec) const;
};

std::vector<RootDisk> isolate_complex_roots(const IntPoly& f, mpfr_prec_t prec);

// Shrinks the disk around its root to radius <= 2^(1-prec) by Newton steps
// from the center (the root stays the one certified at isolation).
RootDisk refine_complex_root(const IntPoly& f, const RootDisk& disk,
                             mpfr_prec_t prec);

// All roots at once, refined and re-certified disjoint.
std::vector<RootDisk> refined_complex_roots(const IntPoly& f, mpfr_prec_t prec);

}  // namespace kn
