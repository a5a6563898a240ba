#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apsq/errors.hpp"

namespace apsq {

// Element of F_p or F_{p^2}, stored as c0 + c1*t with both coordinates
// reduced mod p (c1 = 0 in the prime field case).
struct FqElem {
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;

  friend bool operator==(const FqElem&, const FqElem&) = default;
};

// F_p (m = 1) or F_{p^2} (m = 2) with a fixed modulus t^2 - s where s is the
// least quadratic non-residue mod p, so that all derived tables and counts
// are bit-reproducible. Characteristic 2 is rejected: the curve equations
// x^k - 2y^k + z^k degenerate there and the source material always assumes
// p > n >= 2.
class Fq {
 public:
  Fq(std::uint64_t p, int m);

  std::uint64_t p() const { return p_; }
  int m() const { return m_; }
  std::uint64_t q() const { return q_; }
  // s in the modulus t^2 - s (0 when m = 1).
  std::uint64_t modulus_s() const { return s_; }

  FqElem zero() const { return {0, 0}; }
  FqElem one() const { return {1, 0}; }
  FqElem from_int(long long v) const;
  FqElem make(std::uint64_t c0, std::uint64_t c1 = 0) const;

  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem inv(const FqElem& a) const;
  FqElem div(const FqElem& a, const FqElem& b) const;
  FqElem pow(const FqElem& a, std::uint64_t e) const;

  bool is_zero(const FqElem& a) const { return a.c0 == 0 && a.c1 == 0; }
  bool eq(const FqElem& a, const FqElem& b) const { return a == b; }

  // Canonical dense index c0 + c1*p in [0, q).
  std::uint64_t encode(const FqElem& a) const { return a.c0 + a.c1 * p_; }
  FqElem decode(std::uint64_t idx) const { return {idx % p_, idx / p_}; }

  std::string str(const FqElem& a) const;

  friend bool operator==(const Fq& a, const Fq& b) {
    return a.p_ == b.p_ && a.m_ == b.m_;
  }

 private:
  std::uint64_t p_;
  int m_;
  std::uint64_t q_;
  std::uint64_t s_;  // t^2 = s for m = 2
};

Fq field_make(std::uint64_t p, int m);

// rho_k(t) = #{x in F_q : x^k = t} for every t, as a dense table indexed by
// the canonical encoding. rho_k(0) = 1 and rho_k(t) in {0, g} otherwise,
// where g = gcd(k, q-1).
struct ResidueTable {
  std::uint64_t q = 0;
  unsigned long k = 0;
  std::uint64_t g = 0;
  std::vector<std::uint32_t> rho;

  std::uint32_t at(std::uint64_t enc) const { return rho[enc]; }
};

// Memory guard: q <= 2^26.
ResidueTable residue_table(const Fq& F, unsigned long k);

// All x with x^k = t; the list length always equals rho_k(t).
std::vector<FqElem> kth_roots(const Fq& F, const FqElem& t, unsigned long k);

}  // namespace apsq
