#pragma once

#include <array>
#include <optional>
#include <vector>

#include "apsq/ints.hpp"

namespace apsq {

// Diagonal ternary form a*X^2 + b*Y^2 + c*Z^2 with a*b*c != 0.
struct ConicForm {
  Int a, b, c;

  ConicForm(Int a_, Int b_, Int c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a == 0 || b == 0 || c == 0)
      throw_error(ErrorKind::InvalidArgument, "ConicForm: coefficients must be nonzero");
  }
};

// A place of Q: the archimedean place or a finite prime.
struct Place {
  bool infinite;
  Int p;  // meaningful only when !infinite

  static Place at_infinity() { return Place{true, 0}; }
  static Place at_prime(Int q) { return Place{false, std::move(q)}; }
};

// r with r^k = n, if any; for even k the nonnegative root. k >= 2.
std::optional<Int> is_perfect_kth_power(const Int& n, unsigned long k);

// Squarefree d with n = d * m^2, sign preserved. n != 0.
Int squarefree_part(const Int& n);

// All primes p with lo < p <= hi, ascending. Requires 2 <= lo <= hi.
std::vector<Int> primes_in_range(const Int& lo, const Int& hi);

// Legendre symbol (a/p) for an odd prime p.
int legendre_symbol(const Int& a, const Int& p);

// Hilbert symbol (a,b)_v in {-1,+1}: +1 iff z^2 = a x^2 + b y^2 has a
// nontrivial solution over the completion at v. a, b nonzero rationals.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

struct ConicDecision {
  bool solvable;
  // Primitive witness (x, y, z) with aX^2+bY^2+cZ^2 = 0 when one was found
  // within the search bound; a solvable form may report no witness.
  std::optional<std::array<Int, 3>> witness;
};

// Decides solvability of aX^2 + bY^2 + cZ^2 = 0 over Q by Hilbert symbols
// at infinity, 2 and the odd primes dividing abc, then searches for a small
// witness (|x|,|y|,|z| <= witness_bound) when solvable.
ConicDecision conic_has_rational_point(const ConicForm& f,
                                       const Int& witness_bound = 10000);

}  // namespace apsq
