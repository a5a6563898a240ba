#pragma once

// Group law on a genus-1 curve given as the intersection of two diagonal
// quadrics in P^3 with a chosen base point O, via the osculating-plane
// construction: the plane meeting the curve at O with multiplicity >= 3
// cuts a fourth point O', and plane sections P1 + P2 + P3 + P4 all sum to
// O' in the group. Everything is exact over Q, Q(sqrt D) or F_p (char > 3).
//
// Fourth intersection points are found without radicals: the pencil of the
// two restricted conics contains a member that splits off the line through
// two known intersection points, and the residual line meets a conic in the
// one remaining point, a linear deflation.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "apsq/projective.hpp"

namespace apsq {

template <ExactField F>
struct QuadricCurveT {
  using Elem = typename F::Element;
  std::array<Elem, 4> qa;  // diagonal coefficients of the first quadric
  std::array<Elem, 4> qb;  // and of the second
  ProjPoint<F> base;       // O

  static QuadricCurveT diagonal(const F& f, std::array<long, 4> a, std::array<long, 4> b,
                                ProjPoint<F> O);
  // C_3:  x0^2 - 2x1^2 + x2^2,  x1^2 - 2x2^2 + x3^2;  O = [1:1:1:1].
  static QuadricCurveT c3(const F& f);
  // F_1:  2x0^2 - 3x1^2 + x2^2,  x1^2 - 3x2^2 + 2x3^2.
  static QuadricCurveT f1(const F& f);
  // F_2:  x0^2 - 3x1^2 + 2x2^2,  2x1^2 - 3x2^2 + x3^2.
  static QuadricCurveT f2(const F& f);
};

template <ExactField F>
struct OsculationDataT {
  std::vector<typename F::Element> plane;  // h with h(O) = 0, canonicalized
  ProjPoint<F> osculation_point;           // O'
  bool flex;                               // O' = O
};

template <ExactField F>
bool quadric_member(const QuadricCurveT<F>& C, const F& f, const ProjPoint<F>& P);

template <ExactField F>
OsculationDataT<F> osculation_data(const QuadricCurveT<F>& C, const F& f);

// Multiset of known intersection points, multiplicities summing to 3.
template <ExactField F>
using PointMultiset = std::vector<std::pair<ProjPoint<F>, int>>;

template <ExactField F>
ProjPoint<F> fourth_intersection(const QuadricCurveT<F>& C, const F& f,
                                 const std::vector<typename F::Element>& plane,
                                 const PointMultiset<F>& known);

template <ExactField F>
ProjPoint<F> ec_neg(const QuadricCurveT<F>& C, const F& f, const ProjPoint<F>& P);

template <ExactField F>
ProjPoint<F> ec_add(const QuadricCurveT<F>& C, const F& f, const ProjPoint<F>& P1,
                    const ProjPoint<F>& P2);

template <ExactField F>
ProjPoint<F> ec_scalar_mul(const QuadricCurveT<F>& C, const F& f, long m,
                           const ProjPoint<F>& P);

template <ExactField F>
std::optional<long> point_order(const QuadricCurveT<F>& C, const F& f,
                                const ProjPoint<F>& P, long bound);

enum class GaloisCase { Case1, Case2, Rational };

struct GaloisReport {
  GaloisCase kind;
  ProjPoint<QuadraticField> sigma_point;
  // Signs (s0..s3) realizing P^sigma = [s0 x_{i0} : ...] for the matched
  // pattern (reversal for Case1, identity for Case2); meaningless for
  // Rational.
  std::array<int, 4> signs;
  // For Case2: the progression class, which the corollary forces into P^1(Q).
  std::optional<std::pair<Rat, Rat>> rational_phi;
};

// Conjugates the coordinates of a C_3(Q(sqrt D)) point and classifies the
// result: signed reversal (Case 1), signed identity (Case 2, progression
// then rational), or the point was rational to begin with.
GaloisReport galois_case(const QuadricCurveT<QuadraticField>& C, const QuadraticField& f,
                         const ProjPoint<QuadraticField>& P);

}  // namespace apsq

#include "apsq/quadric_ec_impl.hpp"
