#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "apsq/errors.hpp"

namespace apsq {

// All integers in the library are arbitrary precision; heights in descents
// and searches grow fast enough that fixed-width types are never trusted
// outside finite-field kernels.
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int pow2(unsigned long e) { return pow_int(2, e); }

// Deterministic Miller-Rabin. The base set decides correctly for all
// n < 3.3e24, far beyond the factorization range this library promises.
bool is_prime(const Int& n);

// Factor |n| >= 1 into (prime, exponent) pairs, ascending primes.
// Trial division backed by Pollard rho; intended for inputs up to ~1e18.
std::vector<std::pair<Int, int>> factorize(const Int& n);

bool is_square(const Int& n);

// Floor square root of n >= 0.
Int isqrt(const Int& n);

// Exact k-th root of n if it exists (k >= 1); for even k a nonnegative n is
// required and the nonnegative root is returned.
std::optional<Int> kth_root_exact(const Int& n, unsigned long k);

// q is a square in Q iff numerator and denominator are; returns the
// nonnegative root.
std::optional<Rat> rat_sqrt_exact(const Rat& q);

// Squarefree kernel of a rational modulo squares: sf(num * den).
Int rat_square_class(const Rat& q);

// v_p(n) for n != 0.
int valuation(const Int& n, const Int& p);

}  // namespace apsq
