#pragma once

// Elliptic curves y^2 = (x - e1)(x - e2)(x - e3) with distinct integer
// roots: exact chord-tangent arithmetic over Q, reduction counts, torsion
// via integral-point candidates, naive search, and a full 2-descent rank
// bound through everywhere-local solvability of the standard torsors.

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "apsq/ints.hpp"

namespace apsq {

struct WeierstrassCurve {
  Int e1, e2, e3;

  WeierstrassCurve(Int a, Int b, Int c);

  // y^2 = x^3 + A x^2 + B x + C.
  Int A() const { return -(e1 + e2 + e3); }
  Int B() const { return e1 * e2 + e1 * e3 + e2 * e3; }
  Int C() const { return -(e1 * e2 * e3); }

  // Discriminant of the cubic, prod (e_i - e_j)^2.
  Int cubic_disc() const;
};

struct WPoint {
  bool infinity = true;
  Rat x = 0, y = 0;

  WPoint() = default;
  WPoint(Rat x_, Rat y_) : infinity(false), x(std::move(x_)), y(std::move(y_)) {}
  static WPoint at_infinity() { return WPoint(); }

  friend bool operator==(const WPoint& a, const WPoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const WPoint& a, const WPoint& b) {
    if (a.infinity != b.infinity) return a.infinity;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

bool on_curve(const WeierstrassCurve& E, const WPoint& P);
WPoint w_neg(const WeierstrassCurve& E, const WPoint& P);
WPoint w_add(const WeierstrassCurve& E, const WPoint& P, const WPoint& Q);
WPoint w_mul(const WeierstrassCurve& E, const Int& m, const WPoint& P);

Rat j_invariant(const WeierstrassCurve& E);

// #E(F_p) including the point at infinity; p odd, good reduction.
Int count_mod_p(const WeierstrassCurve& E, const Int& p);

struct TorsionReport {
  Int order;
  std::pair<Int, Int> structure;  // Z/s1 x Z/s2, s1 | s2
  std::vector<WPoint> points;    // the full torsion subgroup
};

// Candidates from y = 0 and the integral Lutz-Nagell filter y^2 | 16 disc;
// orders verified by the group law, the total cross-checked against
// gcd #E(F_p) over good p <= 50.
TorsionReport torsion_subgroup(const WeierstrassCurve& E);

// All affine points with x = u/v^2, |u|, |v| <= H (both y signs).
std::vector<WPoint> naive_point_search(const WeierstrassCurve& E, const Int& H);

using SquareClassPair = std::pair<Int, Int>;

struct DescentReport {
  std::set<SquareClassPair> selmer_pairs;
  long rank_upper_bound;
  std::set<SquareClassPair> image_of_known_points;
  std::vector<WPoint> known_points;  // torsion + small search, deduplicated
};

// Image of P under the 2-descent map E(Q)/2E(Q) -> (Q*/Q*^2)^2.
SquareClassPair descent_image(const WeierstrassCurve& E, const WPoint& P);

// Full 2-descent: for every candidate square-class pair (d1, d2) test the
// torsor  d1 u^2 - d2 v^2 = (e2-e1) t^2,  d1 u^2 - d1 d2 w^2 = (e3-e1) t^2
// for solvability over R, Q_2 and Q_p at the odd primes dividing
// 2 d1 d2 (e1-e2)(e1-e3)(e2-e3). Rank bound: log2 |Sel| - 2.
DescentReport two_descent_rank_bound(const WeierstrassCurve& E);

// Exposed for tests: solvability of the torsor attached to (d1, d2) at one
// place. The p-adic test walks residue refinements with a Hensel
// certificate at each node.
bool torsor_locally_solvable(const WeierstrassCurve& E, const Int& d1, const Int& d2,
                             const std::optional<Int>& p /* nullopt = infinity */);

}  // namespace apsq
