#pragma once

#include "kronewton/slp.hpp"

namespace kn {

// Exponent e such that N = 2^e satisfies the admissibility inequality
// log2 N > log2(l+1) + (l+2) * log2 log2 (4 L); exact integer cases are
// resolved in integer arithmetic, the rest by interval refinement (rounding
// up when undecidable, which is always admissible). L is clamped to >= 1.
long witness_exponent(long L, long ell);

// Evaluation point with coordinates omega_i = omega0^(N^i), i = 1..n.
// omega0 = max(2, scalar height) so that ht(omega0) >= max(log 2, ht of the
// scalar set).
struct WitnessPoint {
  Int omega0;
  long e = 0;  // N = 2^e
  int nvars = 0;
};

WitnessPoint witness_point_for(const Slp& slp);
WitnessPoint witness_point_for_params(long L, long ell, const Int& scalar_height,
                                      int nvars);

struct ZeroTestOptions {
  long budget_bits = 1 << 20;  // exact-evaluation ceiling per intermediate
  int primes = 5;              // modular fallback prime count
  int sz_reps = 2;             // independent Schwartz-Zippel repetitions
  uint64_t seed = 1;
};

struct ZeroTestReport {
  bool is_zero = false;
  bool certain = false;        // exact arithmetic or a nonzero residue
  std::string mode;            // witness-exact | witness-modular | sz-exact | sz-modular
  Int omega0;                  // witness data (when applicable)
  long e = 0;
  std::vector<Int> primes;     // modular evidence
  std::vector<Int> residues;
  std::vector<std::vector<Int>> sample_points;  // sz evidence
  std::string failure_bound;   // "0" when certain
};

// Decides whether the program computes the zero polynomial by evaluating at
// the witness point: a nonzero program has a nonzero value there, so a
// nonzero (exact or residue) answer is a proof. The all-residues-zero branch
// reports the random-prime failure bound.
ZeroTestReport is_zero_witness(const Slp& slp, const ZeroTestOptions& opt = {});

// Randomized polynomial identity test at uniform small integer points, with
// the degree/sample-space failure bound reported.
ZeroTestReport is_zero_sz(const Slp& slp, const ZeroTestOptions& opt = {});

}  // namespace kn
