#pragma once

// The curve families C_{n,k} in P^n cut out by x_i^k - 2 x_{i+1}^k + x_{i+2}^k = 0
// for i = 0..n-2, whose points are arithmetic progressions with n+1 leading
// k-th powers. Membership, trivial points, genus (k = 2), the progression
// map phi, and the Jacobian smoothness checks over F_p.

#include <utility>
#include <vector>

#include "apsq/projective.hpp"

namespace apsq {

struct CurveFamily {
  long n;           // progression has n+1 terms
  unsigned long k;  // power

  CurveFamily(long n_, unsigned long k_) : n(n_), k(k_) {
    if (n < 2 || k < 2)
      throw_error(ErrorKind::InvalidArgument, "CurveFamily: need n >= 2 and k >= 2");
  }
};

// Progression class [a : r] attached to a curve point; r = 0 is the constant
// class (canonically [1 : 0]).
template <ExactField F>
struct APClassT {
  typename F::Element a, r;
};

template <ExactField F>
typename F::Element field_pow(const F& f, typename F::Element base, unsigned long e) {
  auto r = f.one();
  while (e) {
    if (e & 1) r = f.mul(r, base);
    base = f.mul(base, base);
    e >>= 1;
  }
  return r;
}

template <ExactField F>
bool is_on_curve(const CurveFamily& C, const F& field, const ProjPoint<F>& P) {
  if (static_cast<long>(P.dim()) != C.n + 1)
    throw_error(ErrorKind::InvalidArgument, "is_on_curve: point has wrong dimension");
  std::vector<typename F::Element> pk(P.dim());
  for (std::size_t i = 0; i < P.dim(); ++i) pk[i] = field_pow(field, P.x[i], C.k);
  for (long i = 0; i + 2 <= C.n; ++i) {
    auto lhs = field.add(field.sub(pk[i], field.add(pk[i + 1], pk[i + 1])), pk[i + 2]);
    if (!field.is_zero(lhs)) return false;
  }
  return true;
}

// k-th roots of unity of the field, used to spell out the trivial points.
std::vector<Rat> roots_of_unity(const RationalField& f, unsigned long k);
std::vector<QuadFieldElem> roots_of_unity(const QuadraticField& f, unsigned long k);
std::vector<FqElem> roots_of_unity(const PrimeField& f, unsigned long k);

// All points whose coordinates are k-th roots of unity, one canonical
// representative per projective class: u^n points for u = #mu_k(F).
template <ExactField F>
std::vector<ProjPoint<F>> trivial_points(const CurveFamily& C, const F& field) {
  auto mu = roots_of_unity(field, C.k);
  std::vector<ProjPoint<F>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(C.n), 0);
  while (true) {
    std::vector<typename F::Element> coords;
    coords.reserve(C.n + 1);
    coords.push_back(field.one());
    for (auto i : idx) coords.push_back(mu[i]);
    out.push_back(ProjPoint<F>{std::move(coords)});
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == mu.size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

// (n-3) 2^{n-2} + 1; squares only.
Int genus(long n);

// Progression class [x0^k : x1^k - x0^k] of a curve point.
template <ExactField F>
APClassT<F> phi(const CurveFamily& C, const F& field, const ProjPoint<F>& P) {
  if (!is_on_curve(C, field, P))
    throw_error(ErrorKind::InvalidArgument, "phi: point not on curve");
  auto a = field_pow(field, P.x[0], C.k);
  auto r = field.sub(field_pow(field, P.x[1], C.k), a);
  // Canonicalize through the 2-coordinate projective form.
  std::vector<typename F::Element> v{a, r};
  canonicalize_coords(field, v);
  return APClassT<F>{v[0], v[1]};
}

struct JacobianRank {
  long rank;
  bool smooth;  // rank == n-1
};

// Rank of the (n-1)x(n+1) Jacobian of the defining equations at a point of
// C_{n,k}(F_p). Requires p > n and p not dividing k.
JacobianRank jacobian_rank_check(const CurveFamily& C, const PrimeField& field,
                                 const ProjPoint<PrimeField>& P);

struct MinorValue {
  FqElem direct;      // determinant of the minor, Gaussian elimination
  FqElem closed_abs;  // |closed form| = 2^{n-1} (prod x_i) (j2 - j1), sign dropped
  int sign;           // direct = sign * closed_abs (+1/-1); 0 when both vanish
};

// Determinant of the Jacobian minor obtained by deleting columns j1 < j2,
// computed directly and checked against the closed form
// +- 2^{n-1} (prod_{i != j1,j2} x_i) (j2 - j1). Squares only.
MinorValue jacobian_minor_closed_form(const CurveFamily& C, const PrimeField& field,
                                      const ProjPoint<PrimeField>& P, long j1, long j2);

}  // namespace apsq
