#include "apsq/finitefield.hpp"

#include <numeric>
#include <sstream>

#include "apsq/ints.hpp"

namespace apsq {

namespace {

constexpr std::uint64_t kMaxQ = std::uint64_t(1) << 26;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  // p < 2^26 keeps a*b < 2^52; no overflow.
  return (a * b) % p;
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
  // p prime; Fermat.
  return powmod_u64(a, p - 2, p);
}

bool is_prime_u64(std::uint64_t n) { return is_prime(Int(static_cast<unsigned long>(n))); }

}  // namespace

Fq::Fq(std::uint64_t p, int m) : p_(p), m_(m) {
  if (m != 1 && m != 2)
    throw_error(ErrorKind::InvalidArgument, "field_make: degree m must be 1 or 2");
  if (p < 2 || !is_prime_u64(p))
    throw_error(ErrorKind::InvalidArgument, "field_make: p must be prime");
  if (p == 2)
    throw_error(ErrorKind::InvalidArgument,
                "field_make: characteristic 2 is not supported (squares degenerate)");
  if (m == 1) {
    if (p > kMaxQ) throw_error(ErrorKind::ResourceLimit, "field_make: q exceeds 2^26");
    q_ = p;
    s_ = 0;
  } else {
    if (p > (std::uint64_t(1) << 13))
      throw_error(ErrorKind::ResourceLimit, "field_make: q = p^2 exceeds 2^26");
    q_ = p * p;
    // Least non-residue s gives the lexicographically smallest irreducible
    // t^2 - s; deterministic, so counts are reproducible across runs.
    std::uint64_t s = 0;
    for (std::uint64_t c = 2; c < p; ++c) {
      if (powmod_u64(c, (p - 1) / 2, p) == p - 1) {
        s = c;
        break;
      }
    }
    if (s == 0)
      throw_error(ErrorKind::InvariantViolation, "field_make: no non-residue found");
    s_ = s;
  }
}

Fq field_make(std::uint64_t p, int m) { return Fq(p, m); }

FqElem Fq::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return {static_cast<std::uint64_t>(r), 0};
}

FqElem Fq::make(std::uint64_t c0, std::uint64_t c1) const {
  if (m_ == 1 && c1 != 0)
    throw_error(ErrorKind::InvalidArgument, "Fq::make: c1 must vanish in a prime field");
  return {c0 % p_, c1 % p_};
}

FqElem Fq::add(const FqElem& a, const FqElem& b) const {
  return {(a.c0 + b.c0) % p_, (a.c1 + b.c1) % p_};
}

FqElem Fq::sub(const FqElem& a, const FqElem& b) const {
  return {(a.c0 + p_ - b.c0) % p_, (a.c1 + p_ - b.c1) % p_};
}

FqElem Fq::neg(const FqElem& a) const {
  return {a.c0 == 0 ? 0 : p_ - a.c0, a.c1 == 0 ? 0 : p_ - a.c1};
}

FqElem Fq::mul(const FqElem& a, const FqElem& b) const {
  if (m_ == 1) return {mulmod(a.c0, b.c0, p_), 0};
  // (a0 + a1 t)(b0 + b1 t) with t^2 = s.
  std::uint64_t c0 = (mulmod(a.c0, b.c0, p_) + mulmod(s_, mulmod(a.c1, b.c1, p_), p_)) % p_;
  std::uint64_t c1 = (mulmod(a.c0, b.c1, p_) + mulmod(a.c1, b.c0, p_)) % p_;
  return {c0, c1};
}

FqElem Fq::inv(const FqElem& a) const {
  if (is_zero(a)) throw_error(ErrorKind::ArithmeticError, "Fq: division by zero");
  if (m_ == 1) return {invmod_u64(a.c0, p_), 0};
  // 1/(a0 + a1 t) = (a0 - a1 t) / (a0^2 - s a1^2); the norm is nonzero
  // because t^2 - s is irreducible.
  std::uint64_t norm =
      (mulmod(a.c0, a.c0, p_) + p_ - mulmod(s_, mulmod(a.c1, a.c1, p_), p_) % p_) % p_;
  std::uint64_t ninv = invmod_u64(norm, p_);
  return {mulmod(a.c0, ninv, p_), a.c1 == 0 ? 0 : mulmod(p_ - a.c1, ninv, p_)};
}

FqElem Fq::div(const FqElem& a, const FqElem& b) const { return mul(a, inv(b)); }

FqElem Fq::pow(const FqElem& a, std::uint64_t e) const {
  FqElem r = one();
  FqElem base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::string Fq::str(const FqElem& a) const {
  std::ostringstream os;
  if (m_ == 1 || a.c1 == 0) {
    os << a.c0;
  } else {
    os << a.c0 << "+" << a.c1 << "t";
  }
  return os.str();
}

ResidueTable residue_table(const Fq& F, unsigned long k) {
  if (k < 2) throw_error(ErrorKind::InvalidArgument, "residue_table: k must be >= 2");
  if (F.q() > kMaxQ) throw_error(ErrorKind::ResourceLimit, "residue_table: q exceeds 2^26");
  ResidueTable T;
  T.q = F.q();
  T.k = k;
  T.g = std::gcd<std::uint64_t, std::uint64_t>(k, F.q() - 1);
  T.rho.assign(F.q(), 0);
  for (std::uint64_t i = 0; i < F.q(); ++i) {
    FqElem x = F.decode(i);
    T.rho[F.encode(F.pow(x, k))]++;
  }
  return T;
}

std::vector<FqElem> kth_roots(const Fq& F, const FqElem& t, unsigned long k) {
  std::vector<FqElem> roots;
  for (std::uint64_t i = 0; i < F.q(); ++i) {
    FqElem x = F.decode(i);
    if (F.eq(F.pow(x, k), t)) roots.push_back(x);
  }
  return roots;
}

}  // namespace apsq
