#pragma once

// Point counts of C_{n,k} over F_q through the residue-fiber formula
//   #C = ( sum_{(a,r) != (0,0)} prod_{i=0..n} rho_k(a + i r) ) / (q - 1),
// a brute-force projective enumeration used as the ground-truth oracle,
// Hasse-Weil consistency, gonality lower bounds and the finiteness
// threshold they imply.

#include <optional>
#include <string>
#include <vector>

#include "apsq/apcurve.hpp"
#include "apsq/finitefield.hpp"
#include "apsq/parallel.hpp"

namespace apsq {

enum class CountMethod { FiberFormula, BruteForce };

struct CountResult {
  long n;
  unsigned long k;
  std::uint64_t p;
  int m;
  std::uint64_t q;
  Int count;
  CountMethod method;
};

// Fiber-formula count. The r != 0 strata are folded along (F_q*)^k-scaling
// cosets: one representative per coset, weight (q-1)/g, so the loop costs
// O(g q n) instead of O(q^2 n). Division by q-1 is asserted exact.
CountResult count_points(long n, unsigned long k, const Fq& F);

// Plain O(q^2 n) fiber-formula reference, no coset folding. Test oracle for
// the folded loop.
Int count_points_reference(long n, unsigned long k, const Fq& F);

// Canonical representatives of C_{n,k}(F_q), by projective enumeration.
// Guard: q^n <= 10^8.
std::vector<ProjPoint<PrimeField>> enumerate_points(long n, unsigned long k, const Fq& F);

CountResult count_points_bruteforce(long n, unsigned long k, const Fq& F);

// |#C_{n,2}(F_p) - (p+1)| <= 2 g_n sqrt(p), compared exactly on squares.
bool hasse_weil_check(long n, std::uint64_t p);

struct GonalityWitness {
  std::uint64_t p;
  int m;
  Int count;
};

struct GonalityReport {
  long n;
  unsigned long k;
  Int lower_bound;
  GonalityWitness witness;
  std::optional<Rat> corollary_bound;  // 2^{n-1}/n, squares with n >= 3
  std::optional<Int> upper_bound;      // 2^{n-2}, squares with n >= 3
  bool window_extended;                // no admissible prime in (n, 2n)
  std::uint64_t window_hi;             // exclusive upper end actually used
};

// max over admissible (p, m) of ceil(#C(F_{p^m}) / (p^m + 1)). Admissible:
// n < p < window, p not dividing k, and p = 1 mod k when k is odd; the
// window starts at 2n and doubles until a prime appears.
GonalityReport gonality_lower_bound(long n, unsigned long k, int m_max);

// 2^{n-1}/n, exactly.
Rat corollary_closed_form(long n);

struct FreyReport {
  long d;
  unsigned long k;
  long computed_n;                  // least n with gonality_lower_bound > 2d
  GonalityReport computed_report;   // report at computed_n
  std::optional<long> closed_form_n;  // least n with 2^{n-1}/n > 2d (k = 2)
};

FreyReport frey_threshold(long d, unsigned long k, int m_max = 1);

}  // namespace apsq
