#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "apsq/ints.hpp"

namespace apsq {

// Element u + v*sqrt(D) of Q(sqrt(D)) with D squarefree, D != 0, 1.
// D = 1 is accepted as a degenerate marker for plain Q so that progression
// code has a single entry point; sqrt(1) = 1 is folded into u at
// construction, keeping v = 0 on that path.
struct QuadFieldElem {
  Int D = 1;
  Rat u = 0;
  Rat v = 0;

  QuadFieldElem() = default;
  QuadFieldElem(Int D_, Rat u_, Rat v_);

  bool is_rational() const { return v == 0; }
  friend bool operator==(const QuadFieldElem& a, const QuadFieldElem& b) {
    return a.D == b.D && a.u == b.u && a.v == b.v;
  }
};

QuadFieldElem qf_add(const QuadFieldElem& x, const QuadFieldElem& y);
QuadFieldElem qf_sub(const QuadFieldElem& x, const QuadFieldElem& y);
QuadFieldElem qf_mul(const QuadFieldElem& x, const QuadFieldElem& y);
QuadFieldElem qf_div(const QuadFieldElem& x, const QuadFieldElem& y);
QuadFieldElem qf_neg(const QuadFieldElem& x);
QuadFieldElem conj(const QuadFieldElem& x);
Rat norm(const QuadFieldElem& x);
std::string qf_str(const QuadFieldElem& x);

// w with w^2 = z, if z is a square in Q(sqrt(D)).
std::optional<QuadFieldElem> qf_is_square(const QuadFieldElem& z);

// Reduction of z at a degree-1 prime above p (odd): maps sqrt(D) to the
// least square root s of D mod p when D is a residue, to 0 when p | D, and
// fails (nullopt) when D is a non-residue (no degree-1 prime above p).
// Throws not-reducible when p divides a denominator.
std::optional<std::uint64_t> residue_reduction(const QuadFieldElem& z, const Int& p);

struct NonsquareWitness {
  Int p;      // admissible odd prime
  long n;     // least index with a + n*r a non-residue mod the chosen prime
  Int bound;  // (p+3)/2, the guaranteed ceiling for n
};

// Finds the least admissible odd prime p (split in Q(sqrt(D)), reduced
// progression non-constant) and the least n such that a + n*r reduces to a
// non-residue mod p. Guarantees n <= (p+3)/2. D = 1 selects the rational
// path where every odd prime not dividing r (or the denominators) is
// admissible.
NonsquareWitness nonsquare_witness(const Rat& a, const Rat& r, const Int& D);

}  // namespace apsq
