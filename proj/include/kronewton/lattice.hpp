#pragma once

#include <functional>

#include "kronewton/padic.hpp"
#include "kronewton/upoly.hpp"

namespace kn {

// Lattice basis reduction on integer row bases, all-integer bookkeeping
// (Gram determinants and scaled Gram-Schmidt coefficients), deterministic
// including the round-half-toward-zero tie break in size reduction.
struct LllResult {
  std::vector<std::vector<Int>> basis;
  std::vector<std::vector<Int>> transform;  // transform * input = basis
};

LllResult lll_reduce(const std::vector<std::vector<Int>>& basis,
                     const Rat& delta = Rat(99, 100));

// Exact check of the reduction conditions (for invariants and tests).
bool is_lll_reduced(const std::vector<std::vector<Int>>& basis, const Rat& delta);

// Wang-style rational reconstruction of r mod M with |num|, den <= bound;
// requires M > 2 bound^2 for uniqueness. Verifies num = r * den mod M.
std::optional<Rat> rational_reconstruct(const Int& r, const Int& M,
                                        const Int& bound);
std::optional<GaussRat> gauss_reconstruct(const Int& re, const Int& im,
                                          const Int& M, const Int& bound);

// Candidate integer relations sum a_i v_i ~ 0 among complex enclosures,
// shortest-first, via a scaled knapsack lattice at working precision m.
std::vector<std::vector<Int>> relation_candidates(const std::vector<CInt>& vals,
                                                  mpfr_prec_t m, int count = 4);

struct MinPolyQuery {
  int max_degree = 16;
  long height_bits = 256;     // coefficient bit ceiling
  int precision_factor = 4;   // working precision multiplier
};

// Minimal polynomial of the number the refiner approximates: refine(prec)
// must return an enclosure of radius at most 2^(1-prec). Tries degrees
// upward, so the first verified candidate is minimal. Verification: residual
// below 2^(-m/2) at working precision m plus a doubled-precision recheck.
std::optional<IntPoly> min_poly_arch(
    const std::function<CInt(mpfr_prec_t)>& refine, const MinPolyQuery& q);

// p-adic counterpart: refine(k) returns the value mod p^k (nonnegative
// valuation required). Residual must vanish to the working precision, with a
// doubled-precision recheck.
std::optional<IntPoly> min_poly_padic(const std::function<Padic(long)>& refine,
                                      const Int& p, const MinPolyQuery& q);

// Irreducibility over Q of a squarefree primitive polynomial: factor-degree
// patterns mod several primes, with a lattice factor search from a complex
// root (exact division gate) when patterns stay ambiguous.
bool is_irreducible(const IntPoly& f, uint64_t seed = 2);

// A nontrivial factor if one exists (nullopt certifies irreducibility up to
// the documented search bounds).
std::optional<IntPoly> find_rational_factor(const IntPoly& f, uint64_t seed = 2);

}  // namespace kn
