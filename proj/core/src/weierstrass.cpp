#include "apsq/weierstrass.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include "apsq/exactnum.hpp"

namespace apsq {

WeierstrassCurve::WeierstrassCurve(Int a, Int b, Int c)
    : e1(std::move(a)), e2(std::move(b)), e3(std::move(c)) {
  if (e1 == e2 || e1 == e3 || e2 == e3)
    throw_error(ErrorKind::InvalidArgument, "WeierstrassCurve: roots must be distinct");
  // Sorted roots make descent conventions and reports deterministic.
  if (e1 > e2) std::swap(e1, e2);
  if (e2 > e3) std::swap(e2, e3);
  if (e1 > e2) std::swap(e1, e2);
}

Int WeierstrassCurve::cubic_disc() const {
  Int d = (e1 - e2) * (e1 - e3) * (e2 - e3);
  return d * d;
}

bool on_curve(const WeierstrassCurve& E, const WPoint& P) {
  if (P.infinity) return true;
  Rat rhs = (P.x - Rat(E.e1)) * (P.x - Rat(E.e2)) * (P.x - Rat(E.e3));
  return P.y * P.y == rhs;
}

namespace {

void require_on_curve(const WeierstrassCurve& E, const WPoint& P, const char* who) {
  if (!on_curve(E, P))
    throw_error(ErrorKind::InvalidArgument, std::string(who) + ": point not on curve");
}

}  // namespace

WPoint w_neg(const WeierstrassCurve& E, const WPoint& P) {
  require_on_curve(E, P, "w_neg");
  if (P.infinity) return P;
  return WPoint(P.x, -P.y);
}

WPoint w_add(const WeierstrassCurve& E, const WPoint& P, const WPoint& Q) {
  require_on_curve(E, P, "w_add");
  require_on_curve(E, Q, "w_add");
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  Rat A(E.A()), B(E.B());
  Rat lambda;
  if (P.x == Q.x) {
    if (P.y != Q.y || P.y == 0) return WPoint::at_infinity();
    lambda = (3 * P.x * P.x + 2 * A * P.x + B) / (2 * P.y);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  Rat x3 = lambda * lambda - A - P.x - Q.x;
  Rat y3 = lambda * (P.x - x3) - P.y;
  return WPoint(x3, y3);
}

WPoint w_mul(const WeierstrassCurve& E, const Int& m, const WPoint& P) {
  Int n = abs(m);
  WPoint base = m < 0 ? w_neg(E, P) : P;
  WPoint acc = WPoint::at_infinity();
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = w_add(E, acc, base);
    base = w_add(E, base, base);
    n >>= 1;
  }
  return acc;
}

Rat j_invariant(const WeierstrassCurve& E) {
  Int b2 = 4 * E.A();
  Int b4 = 2 * E.B();
  Int c4 = b2 * b2 - 24 * b4;
  Int delta = 16 * E.cubic_disc();
  Rat j(c4 * c4 * c4, delta);
  j.canonicalize();
  return j;
}

Int count_mod_p(const WeierstrassCurve& E, const Int& p) {
  if (p < 3 || !is_prime(p))
    throw_error(ErrorKind::InvalidArgument, "count_mod_p: p must be an odd prime");
  Int delta = 16 * E.cubic_disc();
  if (delta % p == 0)
    throw_error(ErrorKind::InvalidArgument, "count_mod_p: bad reduction at p");
  Int count = p + 1;
  for (Int x = 0; x < p; ++x) {
    Int f = ((x - E.e1) * (x - E.e2) % p) * (x - E.e3) % p;
    f %= p;
    if (f < 0) f += p;
    if (f != 0) count += legendre_symbol(f, p);
  }
  return count;
}

namespace {

// All positive y with y^2 dividing bound.
std::vector<Int> square_divisor_candidates(const Int& bound) {
  Int m = 1;  // product p^{floor(e/2)}
  for (const auto& [p, e] : factorize(bound)) m *= pow_int(p, e / 2);
  std::vector<Int> divs{1};
  for (const auto& [p, e] : factorize(m)) {
    std::size_t base = divs.size();
    Int pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<Int> integer_roots_of(const Int& A, const Int& B, const Int& C2) {
  // Integer roots of x^3 + A x^2 + B x + C2.
  std::vector<Int> roots;
  auto eval = [&](const Int& x) -> Int { return ((x + A) * x + B) * x + C2; };
  if (C2 == 0) {
    roots.push_back(0);
    // Remaining quadratic x^2 + A x + B.
    Int disc = A * A - 4 * B;
    if (disc >= 0 && is_square(disc)) {
      Int s = isqrt(disc);
      if ((-A + s) % 2 == 0) roots.push_back((-A + s) / 2);
      if (s != 0 && (-A - s) % 2 == 0) roots.push_back((-A - s) / 2);
    }
    return roots;
  }
  // Rational root theorem: x | C2.
  std::vector<Int> divs{1};
  for (const auto& [p, e] : factorize(C2)) {
    std::size_t base = divs.size();
    Int pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  for (const Int& d : divs) {
    if (eval(d) == 0) roots.push_back(d);
    if (eval(-d) == 0) roots.push_back(-d);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

TorsionReport torsion_subgroup(const WeierstrassCurve& E) {
  Int A = E.A(), B = E.B(), C = E.C();
  std::set<WPoint> torsion;
  torsion.insert(WPoint::at_infinity());
  for (const Int& e : {E.e1, E.e2, E.e3}) torsion.insert(WPoint(Rat(e), 0));

  // Lutz-Nagell-style integral candidates: y^2 | 16 disc.
  Int bound = 16 * E.cubic_disc();
  for (const Int& y : square_divisor_candidates(bound)) {
    for (const Int& x : integer_roots_of(A, B, C - y * y)) {
      for (const Rat& sy : {Rat(y), Rat(-y)}) {
        WPoint P(Rat(x), sy);
        if (torsion.count(P)) continue;
        // Verify finite order; Mazur caps torsion orders at 12.
        WPoint acc = P;
        for (int m = 2; m <= 13; ++m) {
          acc = w_add(E, acc, P);
          if (acc.infinity) {
            torsion.insert(P);
            break;
          }
          // Non-integral multiples certify infinite order early.
          if (acc.x.get_den() != 1) break;
        }
      }
    }
  }

  // Close under addition (candidate filtering can in principle admit a point
  // whose multiples land outside the candidate list).
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<WPoint> pts(torsion.begin(), torsion.end());
    for (const auto& P : pts)
      for (const auto& Q : pts) {
        WPoint S = w_add(E, P, Q);
        if (!torsion.count(S)) {
          torsion.insert(S);
          grew = true;
        }
      }
  }

  TorsionReport rep;
  rep.order = Int(static_cast<unsigned long>(torsion.size()));
  rep.points.assign(torsion.begin(), torsion.end());

  // Cross-check: the torsion order divides #E(F_p) for every good prime.
  Int g = 0;
  for (Int p = 5; p <= 50; ++p) {
    if (!is_prime(p)) continue;
    if ((16 * E.cubic_disc()) % p == 0) continue;
    Int c = count_mod_p(E, p);
    Int gg;
    mpz_gcd(gg.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    g = gg;
  }
  if (g % rep.order != 0)
    throw_error(ErrorKind::InvariantViolation,
                "torsion order does not divide the reduction gcd");

  // Full rational 2-torsion: T = Z/2 x Z/(order/2); confirm an element of
  // order order/2 exists.
  Int half = rep.order / 2;
  bool found = false;
  for (const auto& P : rep.points) {
    if (P.infinity) continue;
    Int ord = 1;
    WPoint acc = P;
    while (!acc.infinity) {
      acc = w_add(E, acc, P);
      ++ord;
    }
    if (ord == half) found = true;
  }
  if (half == 1) found = true;
  if (!found)
    throw_error(ErrorKind::InvariantViolation, "torsion structure is not Z/2 x Z/(n/2)");
  rep.structure = {half == 1 ? Int(1) : Int(2), half == 1 ? rep.order : half};
  return rep;
}

std::vector<WPoint> naive_point_search(const WeierstrassCurve& E, const Int& H) {
  if (H < 1) throw_error(ErrorKind::InvalidArgument, "naive_point_search: H must be >= 1");
  std::vector<WPoint> out;
  for (Int v = 1; v <= H; ++v) {
    Int v2 = v * v;
    for (Int u = -H; u <= H; ++u) {
      if (gcd_int(u, v) != 1) continue;
      Int N = (u - E.e1 * v2) * (u - E.e2 * v2) * (u - E.e3 * v2);
      if (N < 0 || !is_square(N)) continue;
      Int y = isqrt(N);
      Rat x(u, v2);
      x.canonicalize();
      Rat yy(y, v2 * v);
      yy.canonicalize();
      out.emplace_back(x, yy);
      if (y != 0) out.emplace_back(x, -yy);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SquareClassPair descent_image(const WeierstrassCurve& E, const WPoint& P) {
  require_on_curve(E, P, "descent_image");
  if (P.infinity) return {1, 1};
  if (P.y == 0) {
    if (P.x == Rat(E.e1))
      return {squarefree_part((E.e1 - E.e2) * (E.e1 - E.e3)), squarefree_part(E.e1 - E.e2)};
    if (P.x == Rat(E.e2))
      return {squarefree_part(E.e2 - E.e1), squarefree_part((E.e2 - E.e1) * (E.e2 - E.e3))};
    return {squarefree_part(E.e3 - E.e1), squarefree_part(E.e3 - E.e2)};
  }
  return {rat_square_class(P.x - Rat(E.e1)), rat_square_class(P.x - Rat(E.e2))};
}

namespace {

// ---- Torsor local solvability ----------------------------------------
//
// Projective model in [u : v : w : t]:
//   Q_A: d1 u^2 - d2 v^2    - (e2-e1) t^2 = 0
//   Q_B: d1 u^2 - d1 d2 w^2 - (e3-e1) t^2 = 0

struct Torsor {
  std::array<Int, 4> qa;  // diagonal coefficients on (u, v, w, t)
  std::array<Int, 4> qb;

  Int eval_a(const std::array<Int, 4>& x) const {
    return qa[0] * x[0] * x[0] + qa[1] * x[1] * x[1] + qa[2] * x[2] * x[2] +
           qa[3] * x[3] * x[3];
  }
  Int eval_b(const std::array<Int, 4>& x) const {
    return qb[0] * x[0] * x[0] + qb[1] * x[1] * x[1] + qb[2] * x[2] * x[2] +
           qb[3] * x[3] * x[3];
  }
};

Torsor make_torsor(const WeierstrassCurve& E, const Int& d1, const Int& d2) {
  Torsor T;
  T.qa = {d1, -d2, 0, -(E.e2 - E.e1)};
  T.qb = {d1, 0, -(d1 * d2), -(E.e3 - E.e1)};
  return T;
}

bool real_solvable(const WeierstrassCurve& E, const Int& d1, const Int& d2) {
  // x-line criterion: need x with sign(x - e_i) matching (d1, d2, d1 d2).
  std::vector<Int> es{E.e1, E.e2, E.e3};
  std::vector<Int> sorted = es;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Rat> samples{Rat(sorted[0]) - 1, (Rat(sorted[0]) + Rat(sorted[1])) / 2,
                           (Rat(sorted[1]) + Rat(sorted[2])) / 2, Rat(sorted[2]) + 1};
  Int d12 = d1 * d2;
  for (const Rat& x : samples) {
    bool ok = ((x - Rat(E.e1)) > 0) == (d1 > 0) && ((x - Rat(E.e2)) > 0) == (d2 > 0) &&
              ((x - Rat(E.e3)) > 0) == (d12 > 0);
    if (ok) return true;
  }
  return false;
}

int vp_or_large(const Int& n, const Int& p, int cap) {
  if (n == 0) return cap + 100;
  return valuation(n, p);
}

// Residue-refinement search for a Z_p point with a unit coordinate. Each
// node fixes the chart coordinate to 1 and knows the free coordinates mod
// p^j; a node certifies solvability when a 2x2 Jacobian minor has valuation
// m with both forms vanishing mod p^{2m+1}.
class ZpSearch {
 public:
  ZpSearch(const Torsor& T, Int p, int cap) : T_(T), p_(std::move(p)), cap_(cap) {}

  bool run() {
    for (int chart = 0; chart < 4; ++chart) {
      std::array<Int, 4> x{0, 0, 0, 0};
      x[chart] = 1;
      if (explore(x, chart, 0)) return true;
    }
    return false;
  }

 private:
  // Newton-Hensel certificate at the exact integer representative x: both
  // forms vanish mod p^{2m+1} where m is the valuation of some 2x2 Jacobian
  // minor on the free coordinates. Certifies a Z_p point with the third
  // free coordinate frozen.
  bool certified(const std::array<Int, 4>& x, int chart) const {
    Int fa = T_.eval_a(x), fb = T_.eval_b(x);
    if (fa == 0 && fb == 0) return true;  // exact integer point
    std::array<Int, 4> ga, gb;
    for (int i = 0; i < 4; ++i) {
      ga[i] = 2 * T_.qa[i] * x[i];
      gb[i] = 2 * T_.qb[i] * x[i];
    }
    int best = cap_ + 100;
    for (int i = 0; i < 4; ++i) {
      if (i == chart) continue;
      for (int k = i + 1; k < 4; ++k) {
        if (k == chart) continue;
        Int minor = ga[i] * gb[k] - ga[k] * gb[i];
        if (minor == 0) continue;
        best = std::min(best, valuation(minor, p_));
      }
    }
    if (best > cap_) return false;
    int need = 2 * best + 1;
    return vp_or_large(fa, p_, cap_) >= need && vp_or_large(fb, p_, cap_) >= need;
  }

  // x is exact mod p^j (entries in [0, p^j), chart coordinate = 1); both
  // forms vanish mod p^j. Certify or refine mod p^{j+1}.
  bool explore(const std::array<Int, 4>& x, int chart, int j) {
    if (certified(x, chart)) return true;
    if (j >= cap_ || ++nodes_ > kNodeBudget)
      throw_error(ErrorKind::InvariantViolation,
                  "torsor local solvability: search budget exhausted without certificate");
    Int pj = pow_int(p_, static_cast<unsigned long>(j));
    Int pj1 = pj * p_;
    std::array<int, 3> free{};
    int fi = 0;
    for (int i = 0; i < 4; ++i)
      if (i != chart) free[fi++] = i;
    std::array<Int, 4> y = x;
    for (Int a = 0; a < p_; ++a) {
      y[free[0]] = x[free[0]] + a * pj;
      for (Int b = 0; b < p_; ++b) {
        y[free[1]] = x[free[1]] + b * pj;
        for (Int c = 0; c < p_; ++c) {
          y[free[2]] = x[free[2]] + c * pj;
          if (T_.eval_a(y) % pj1 != 0 || T_.eval_b(y) % pj1 != 0) continue;
          if (explore(y, chart, j + 1)) return true;
        }
      }
    }
    return false;
  }

  static constexpr long kNodeBudget = 200000;
  const Torsor& T_;
  Int p_;
  int cap_;
  long nodes_ = 0;
};

int torsor_precision_cap(const Torsor& T, const Int& p) {
  int v = 0;
  for (const Int& c : T.qa)
    if (c != 0) v = std::max(v, valuation(c, p));
  for (const Int& c : T.qb)
    if (c != 0) v = std::max(v, valuation(c, p));
  return 2 * v + 9;
}

}  // namespace

bool torsor_locally_solvable(const WeierstrassCurve& E, const Int& d1, const Int& d2,
                             const std::optional<Int>& p) {
  if (!p) return real_solvable(E, d1, d2);
  Torsor T = make_torsor(E, d1, d2);
  ZpSearch search(T, *p, torsor_precision_cap(T, *p));
  return search.run();
}

namespace {

std::vector<Int> signed_squarefree_divisors(const Int& n) {
  std::vector<Int> divs{1};
  for (const auto& [q, e] : factorize(n)) {
    if (q == 1) continue;
    std::size_t base = divs.size();
    for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * q);
  }
  std::vector<Int> out;
  for (const Int& d : divs) {
    out.push_back(d);
    out.push_back(-d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

DescentReport two_descent_rank_bound(const WeierstrassCurve& E) {
  DescentReport rep;
  Int diff_prod = (E.e1 - E.e2) * (E.e1 - E.e3) * (E.e2 - E.e3);

  std::vector<Int> cand1 = signed_squarefree_divisors((E.e1 - E.e2) * (E.e1 - E.e3));
  std::vector<Int> cand2 = signed_squarefree_divisors((E.e2 - E.e1) * (E.e2 - E.e3));

  for (const Int& d1 : cand1) {
    for (const Int& d2 : cand2) {
      // Places: infinity, 2 and the odd primes of 2 d1 d2 diff_prod.
      if (!torsor_locally_solvable(E, d1, d2, std::nullopt)) continue;
      if (!torsor_locally_solvable(E, d1, d2, Int(2))) continue;
      bool ok = true;
      for (const auto& [q, e] : factorize(2 * d1 * d2 * diff_prod)) {
        if (q == 2) continue;
        if (!torsor_locally_solvable(E, d1, d2, q)) {
          ok = false;
          break;
        }
      }
      if (ok) rep.selmer_pairs.insert({d1, d2});
    }
  }

  // |Sel| is a power of two at least 4 (it contains the 2-torsion image).
  std::size_t sz = rep.selmer_pairs.size();
  if (sz < 4 || (sz & (sz - 1)) != 0)
    throw_error(ErrorKind::InvariantViolation, "Selmer set size is not a power of two >= 4");
  long log2sz = 0;
  while ((std::size_t(1) << log2sz) < sz) ++log2sz;
  rep.rank_upper_bound = log2sz - 2;

  // Known points: torsion plus a small search.
  auto tors = torsion_subgroup(E);
  rep.known_points = tors.points;
  for (const auto& P : naive_point_search(E, 20)) {
    if (std::find(rep.known_points.begin(), rep.known_points.end(), P) ==
        rep.known_points.end())
      rep.known_points.push_back(P);
  }
  for (const auto& P : rep.known_points)
    rep.image_of_known_points.insert(descent_image(E, P));
  for (const auto& img : rep.image_of_known_points) {
    if (!rep.selmer_pairs.count(img))
      throw_error(ErrorKind::InvariantViolation,
                  "descent image of a rational point escapes the Selmer set");
  }
  return rep;
}

}  // namespace apsq
