#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kronewton/interval.hpp"
#include "kronewton/linalg.hpp"
#include "kronewton/padic.hpp"
#include "kronewton/place.hpp"
#include "kronewton/poly.hpp"

namespace kn {

// One Newton step z - DF(z)^{-1} F(z) by exact linear solve.
std::vector<GaussRat> newton_step(const PolySystem& f,
                                  const std::vector<GaussRat>& z);

// Nearest multiple of 2^-bits, ties toward zero.
Rat round_dyadic(const Rat& x, long bits);
GaussRat round_dyadic(const GaussRat& x, long bits);
std::vector<GaussRat> round_dyadic(const std::vector<GaussRat>& z, long bits);

struct NewtonTrajectory {
  std::vector<std::vector<GaussRat>> points;  // z_0 .. z_k, exact
  std::vector<RInt> err;  // ||z_i - zeta||_nu per point when a reference was given
  bool has_reference = false;
  // err[i] <= 2^(1 - 2^i) err[0] held for every i (true vacuously without a
  // reference).
  bool quadratic_ok = false;
};

// Runs `steps` exact Newton iterations from z0. round_bits > 0 rounds every
// iterate to that many fractional bits to cap coordinate growth. A reference
// zero (a box at the archimedean place, or an exact point at any place)
// turns on error measurement.
NewtonTrajectory run_newton(const PolySystem& f, const std::vector<GaussRat>& z0,
                            int steps, const Place& nu = Place::inf(),
                            const std::vector<CInt>* zeta_box = nullptr,
                            const std::vector<GaussRat>* zeta_exact = nullptr,
                            long round_bits = 0, mpfr_prec_t prec = 256);

// gamma(F, zeta) = ||DF(zeta)^{-1} D^2 F(zeta) / 2||, for systems of degree
// at most 2 (every higher derivative tensor vanishes, so the sup over the
// tensor orders collapses to the quadratic term).
//
// Archimedean readings of the bilinear tensor norm: `op` encloses the
// operator norm between a probe lower bound and the Frobenius upper cap;
// `frob` is the Frobenius norm itself, tight. Certification consumes the
// sound upper end of `op`.
struct GammaBall {
  RInt op;
  RInt frob;
};

GammaBall gamma_arch(const PolySystem& f, const std::vector<CInt>& zeta,
                     mpfr_prec_t prec);
// Same from an exact point (tensor assembled exactly, then bounded).
GammaBall gamma_arch_point(const PolySystem& f,
                           const std::vector<GaussRat>& zeta, mpfr_prec_t prec);

// Exact p-adic gamma at an exact point: the ultrametric operator norm of the
// tensor is its maximum entry norm. Gaussian data is handled at primes with
// a unique extension; the value can be irrational only at p = 2, hence the
// enclosure variant.
Rat gamma_padic(const PolySystem& f, const std::vector<GaussRat>& zeta,
                const Int& p);
RInt gamma_padic_rint(const PolySystem& f, const std::vector<GaussRat>& zeta,
                      const Int& p, mpfr_prec_t prec);

struct RatBall {
  Rat lb, ub;
  bool exact = false;
};
// Enclosure from a finite-precision p-adic point.
RatBall gamma_padic_box(const PolySystem& f, const std::vector<Padic>& zeta,
                        const Int& p);

// A certified approximate zero: the product test against (3 - sqrt 7)/2
// passed with sound upper bounds on both factors.
struct ApproxZero {
  std::vector<GaussRat> z;
  Place nu;
  RInt gamma;    // enclosure of gamma_nu(F, zeta)
  RInt dist;     // enclosure of ||z - zeta||_nu
  RInt product;  // dist * gamma
  RInt margin;   // (3 - sqrt 7)/2 - product; >= 0 iff accepted
  std::string log;
};

enum class Verdict { accepted, rejected, inconclusive };

struct CertifyResult {
  Verdict verdict = Verdict::inconclusive;
  ApproxZero cert;  // product/margin data filled in every case
};

// Convergence test against a rigorous enclosure of the associate zero:
// accepts iff ub(dist) * ub(gamma) <= (3 - sqrt 7)/2, rejects iff
// lb(dist) * lb(gamma) exceeds it, and reports inconclusive in between
// (caller refines the enclosure). DF(z) singular is an error.
CertifyResult certify_arch(const PolySystem& f, const std::vector<GaussRat>& z,
                           const std::vector<CInt>& zeta, mpfr_prec_t prec);
CertifyResult certify_padic(const PolySystem& f, const std::vector<GaussRat>& z,
                            const std::vector<Padic>& zeta, const Int& p);

// Distance from a nonsingular matrix to the singular variety, 1/||A^{-1}||.
// The archimedean report carries the operator-norm reading, the Frobenius
// reading, and the classical cross-check sigma_min(A) computed from the
// characteristic polynomial of A^H A.
struct EckardtYoung {
  RInt dist_op;
  RInt dist_frob;
  RInt sigma_min;
};
EckardtYoung eckardt_young_arch(const MatK<GaussRat>& a, mpfr_prec_t prec);
Rat eckardt_young_padic(const MatK<GaussRat>& a, const Int& p);

// Per-place gamma values and their product-formula aggregate
//   (prod over places of max(1, gamma_nu)^{n_nu})^(1/[K:Q]),
// which collapses to max(1, gamma_inf) * prod_p max(1, gamma_p) both over Q
// and over the gaussian rationals. Requires an exact zero. gamma_p <= 1 is
// guaranteed for every prime not dividing the support divisor, so the finite
// evaluation set {p <= prime_bound} + support primes is exhaustive.
struct GammaReport {
  struct Entry {
    Place nu;
    RInt value;
    std::optional<Rat> exact;  // finite places with integral valuation
  };
  std::vector<Entry> places;
  RInt universal;
  Int support_divisor;
  std::vector<Int> support_primes;  // evaluated finite places with gamma > 1
  int field_degree = 1;
};
GammaReport universal_gamma(const PolySystem& f,
                            const std::vector<GaussRat>& zeta,
                            const Int& prime_bound, mpfr_prec_t prec = 192);

// Bound formula evaluation. All logarithms natural; heights are logs of the
// integer height data.
struct BoundsInput {
  long n = 1;     // number of variables
  RInt h;         // height bound on the equations
  RInt ht_zeta;   // height of the zero
  long k_deg = 1; // [K : Q]
  long l_deg = 1; // [L : Q]
  std::optional<Int> abs_disc_l;  // |Delta_L|
};
struct BoundsReport {
  BoundsInput in;
  std::optional<RInt> log_gamma;  // input echo
  std::optional<RInt> log_ey;
  // Lower bounds on ht(z) for certified z:
  std::optional<RInt> ht_lb_gamma;     // (log g - L(5 log n + 2h) - 3) / (3L)
  std::optional<RInt> ht_lb_ey;        // (log d - L(7 log n + 3h) - 5) / (3L)
  std::optional<RInt> ht_lb_gamma_qi;  // (log g - (10 log n + 4h + 3)) / 6
  std::optional<RInt> ht_lb_ey_qi;     // (log d - (14 log n + 6h + 5)) / 6
  // Upper bound on log gamma_nu:
  RInt log_gamma_ub;  // 3 K n (n^2 + 4 log n + h + ht_zeta + 3)
  // Attainable height of an approximate zero:
  std::optional<RInt> ht_ub;  // (1/L) log|Delta_L| + K n (n^2 + h + n ht_zeta)
};
BoundsReport bounds_report(const BoundsInput& in,
                           const std::optional<RInt>& log_gamma,
                           const std::optional<RInt>& log_ey,
                           mpfr_prec_t prec = 128);

// Hensel basin test at a p-integral point: accepts iff det DF(z) is a p-adic
// unit and ||F(z)||_p <= p^-2, allowing one Newton pre-lift when
// ||F(z)||_p = p^-1. Acceptance pins a unique zero zeta with
// ||z - zeta||_p <= 1/p, reported mod p^prec by quadratic lifting.
struct HenselVerdict {
  bool accepted = false;
  Int p;
  bool det_unit = false;
  long fval = 0;  // min_i v_p(f_i) at the tested point, clipped at prec
  int pre_lifts = 0;
  std::vector<Int> z_test;  // the point the p^2 test ran at, mod p^2
  std::vector<Int> zeta;    // lifted zero mod p^prec, when accepted
  long prec = 0;
};
HenselVerdict hensel_certify(const PolySystem& f, const std::vector<Rat>& z,
                             const Int& p, long prec = 8);

}  // namespace kn
