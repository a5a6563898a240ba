#include "apsq/verify.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "apsq/counting.hpp"
#include "apsq/progressions.hpp"
#include "apsq/quadric_ec.hpp"
#include "apsq/weierstrass.hpp"

namespace apsq {

namespace {

struct Check {
  std::ostringstream detail;
  bool ok = true;

  template <typename A, typename B>
  void equal(const char* what, const A& got, const B& expect) {
    if (!(got == expect)) {
      ok = false;
      detail << "[" << what << ": got " << got << ", expected " << expect << "] ";
    }
  }
  void require(const char* what, bool cond) {
    if (!cond) {
      ok = false;
      detail << "[" << what << "] ";
    }
  }
  void note(const std::string& s) { detail << s; }
};

CriterionResult counting_ground_truth() {
  Check c;
  for (long n : {2L, 3L, 4L}) {
    for (unsigned long k : {2ul, 3ul}) {
      for (auto [p, m] : std::vector<std::pair<std::uint64_t, int>>{
               {5, 1}, {7, 1}, {11, 1}, {5, 2}, {7, 2}}) {
        if (p <= static_cast<std::uint64_t>(n) || k % p == 0) continue;
        Fq F = field_make(p, m);
        Int fiber = count_points(n, k, F).count;
        Int brute = count_points_bruteforce(n, k, F).count;
        if (fiber != brute) {
          c.ok = false;
          c.detail << "[mismatch at n=" << n << " k=" << k << " q=" << F.q() << "] ";
        }
        if (k == 2 && fiber < pow2(static_cast<unsigned long>(n))) {
          c.ok = false;
          c.detail << "[trivial-point floor violated at n=" << n << " q=" << F.q() << "] ";
        }
      }
    }
  }
  c.equal("#C3(F5)", count_points(3, 2, field_make(5, 1)).count, 8);
  c.equal("#C4(F7)", count_points(4, 2, field_make(7, 1)).count, 16);
  c.equal("#C5(F7)", count_points(5, 2, field_make(7, 1)).count, 32);
  c.equal("#C_{2,3}(F5)", count_points(2, 3, field_make(5, 1)).count, 6);
  c.equal("#C_{2,3}(F7)", count_points(2, 3, field_make(7, 1)).count, 12);
  if (c.ok) c.note("fiber formula = brute force on the full grid; pinned counts exact");
  return {1, "counting ground truth", c.ok, c.detail.str()};
}

CriterionResult genus_hasse_weil() {
  Check c;
  c.equal("genus(3)", genus(3), 1);
  c.equal("genus(4)", genus(4), 5);
  c.equal("genus(5)", genus(5), 17);
  c.equal("genus(6)", genus(6), 49);
  int checked = 0;
  for (long n = 2; n <= 6; ++n) {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
      if (p <= static_cast<std::uint64_t>(n)) continue;
      c.require("hasse-weil", hasse_weil_check(n, p));
      ++checked;
    }
  }
  if (c.ok) {
    c.note("genus 1,5,17,49; Hasse-Weil holds at ");
    c.detail << checked << " (n,p) pairs";
  }
  return {2, "genus and Hasse-Weil bounds", c.ok, c.detail.str()};
}

CriterionResult smoothness() {
  Check c;
  long points_checked = 0;
  for (long n = 2; n <= 5; ++n) {
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
      if (p <= static_cast<std::uint64_t>(n)) continue;
      PrimeField F(p);
      CurveFamily C(n, 2);
      for (const auto& pt : enumerate_points(n, 2, F.fq())) {
        auto jr = jacobian_rank_check(C, F, pt);
        c.require("rank = n-1", jr.rank == n - 1 && jr.smooth);
        for (long j1 = 0; j1 <= n; ++j1)
          for (long j2 = j1 + 1; j2 <= n; ++j2) {
            // Throws on closed-form mismatch; sign 0 only when both vanish.
            auto mv = jacobian_minor_closed_form(C, F, pt, j1, j2);
            c.require("minor consistency",
                      F.is_zero(mv.direct) == F.is_zero(mv.closed_abs));
          }
        ++points_checked;
      }
    }
  }
  if (c.ok) {
    c.detail << "all " << points_checked
             << " points smooth with closed-form minors matching direct determinants";
  }
  return {3, "smoothness via Jacobian minors", c.ok, c.detail.str()};
}

CriterionResult gonality_frey() {
  Check c;
  auto g5 = gonality_lower_bound(5, 2, 1);
  c.equal("gonality bound n=5", g5.lower_bound, 4);
  c.equal("witness p", Int(static_cast<unsigned long>(g5.witness.p)), 7);
  c.equal("witness m", g5.witness.m, 1);
  for (long n = 3; n <= 8; ++n) {
    Rat expect(pow2(static_cast<unsigned long>(n - 1)), Int(n));
    expect.canonicalize();
    c.require("corollary closed form", corollary_closed_form(n) == expect);
  }
  auto f1 = frey_threshold(1, 2);
  auto f2 = frey_threshold(2, 2);
  c.require("frey d=1", f1.closed_form_n && *f1.closed_form_n == 5);
  c.require("frey d=2", f2.closed_form_n && *f2.closed_form_n == 6);
  if (c.ok)
    c.note("bound 4 via (7,1); 2^{n-1}/n exact; thresholds 5 and 6 under the closed form");
  return {4, "gonality bounds and finiteness thresholds", c.ok, c.detail.str()};
}

CriterionResult group_law() {
  Check c;
  RationalField Q;
  auto C = QuadricCurveT<RationalField>::c3(Q);
  auto osc = osculation_data(C, Q);
  std::vector<Rat> expect{-1, 3, -3, 1};
  bool prop = true;
  for (int i = 0; i < 4 && prop; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (osc.plane[i] * expect[j] != osc.plane[j] * expect[i]) prop = false;
  c.require("osculating plane = (-1,3,-3,1) up to scalar", prop);
  ProjPoint<RationalField> oprime{{Rat(1), Rat(-1), Rat(-1), Rat(1)}};
  c.require("O' = [1:-1:-1:1]", proj_eq(Q, osc.osculation_point, oprime));

  auto qp = [&](std::vector<long> v) {
    std::vector<Rat> coords;
    for (long t : v) coords.emplace_back(t);
    return ProjPoint<RationalField>{std::move(coords)};
  };
  c.require("[-1:1:1:1] + [1:-1:1:1] = [-1:1:-1:1]",
            proj_eq(Q, ec_add(C, Q, qp({-1, 1, 1, 1}), qp({1, -1, 1, 1})),
                    qp({-1, 1, -1, 1})));
  c.require("2 * [-1:1:1:1] = [1:-1:-1:1]",
            proj_eq(Q, ec_scalar_mul(C, Q, 2, qp({-1, 1, 1, 1})), qp({1, -1, -1, 1})));

  for (const auto& P : trivial_points(CurveFamily(3, 2), Q)) {
    int minus = 0;
    for (const auto& x : P.x)
      if (x < 0) ++minus;
    auto ord = point_order(C, Q, P, 8);
    long expect_ord = minus == 0 ? 1 : (minus % 2 == 0 ? 2 : 4);
    c.require("trivial point order parity", ord && *ord == expect_ord);
  }

  std::mt19937_64 rng(1009);
  int triples = 0;
  for (std::uint64_t p : {11ull, 13ull, 17ull, 19ull}) {
    PrimeField F(p);
    auto Cp = QuadricCurveT<PrimeField>::c3(F);
    auto pts = enumerate_points(3, 2, F.fq());
    for (int i = 0; i < 55; ++i) {
      const auto& a = pts[rng() % pts.size()];
      const auto& b = pts[rng() % pts.size()];
      const auto& d = pts[rng() % pts.size()];
      auto ab = ec_add(Cp, F, a, b);
      bool ok = proj_eq(F, ab, ec_add(Cp, F, b, a)) &&
                proj_eq(F, ec_add(Cp, F, ab, d), ec_add(Cp, F, a, ec_add(Cp, F, b, d))) &&
                proj_eq(F, ec_add(Cp, F, a, ec_neg(Cp, F, a)), Cp.base) &&
                proj_eq(F, ec_add(Cp, F, a, Cp.base), a);
      c.require("group axioms over F_p", ok);
      ++triples;
    }
  }
  if (c.ok) {
    c.detail << "osculating plane and identities exact; axioms on " << triples
             << " random triples";
  }
  return {5, "quadric group law", c.ok, c.detail.str()};
}

CriterionResult named_curves() {
  Check c;
  WeierstrassCurve c3(0, 1, -3), f1(0, 1, -8), f2(0, 4, -5), e(0, -2, -6);
  Rat j = j_invariant(c3);
  Rat expect(35152, 9);
  c.require("j(C3 Jacobian) = 2^4 13^3 / 3^2", j == expect);
  c.equal("torsion C3", torsion_subgroup(c3).order, 8);
  c.equal("torsion F1", torsion_subgroup(f1).order, 8);
  c.equal("torsion F2", torsion_subgroup(f2).order, 8);
  c.equal("torsion E", torsion_subgroup(e).order, 4);
  c.equal("rank bound C3", two_descent_rank_bound(c3).rank_upper_bound, 0L);
  c.equal("rank bound F1", two_descent_rank_bound(f1).rank_upper_bound, 0L);
  c.equal("rank bound F2", two_descent_rank_bound(f2).rank_upper_bound, 0L);
  c.equal("rank bound E", two_descent_rank_bound(e).rank_upper_bound, 1L);
  auto pts = naive_point_search(e, 10);
  c.require("search finds (2,8)",
            std::find(pts.begin(), pts.end(), WPoint(2, 8)) != pts.end());
  if (c.ok)
    c.note("j exact; torsion (8,8,8,4); descent bounds (0,0,0,1); (2,8) found");
  return {6, "named curves: torsion, descent, generator", c.ok, c.detail.str()};
}

CriterionResult cross_model() {
  Check c;
  WeierstrassCurve c3(0, 1, -3);
  for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
    Int lhs = count_points(3, 2, field_make(p, 1)).count;
    Int rhs = count_mod_p(c3, Int(static_cast<unsigned long>(p)));
    if (lhs != rhs) {
      c.ok = false;
      c.detail << "[p=" << p << ": " << lhs << " != " << rhs << "] ";
    }
  }
  if (c.ok) c.note("#C_3(F_p) = #E(F_p) for p in {5,7,11,13}");
  return {7, "cross-model count identity", c.ok, c.detail.str()};
}

CriterionResult progression_searches() {
  Check c;
  c.equal("run(49,120 | 409)", square_run_length(APSpec(49, 120), 409), 5L);
  auto over_q = max_square_run_search(10000, 10000, 1);
  c.equal("max run over Q at 1e4", over_q.best, 3L);
  for (long d : {2L, 3L, 5L, 13L, 73L, 409L}) {
    auto w = six_square_witness_search(d, 10000, 10000);
    if (w) {
      c.ok = false;
      c.detail << "[six-square witness at D=" << d << ": a=" << w->a << " r=" << w->r
               << "] ";
    }
  }
  bool found = false;
  for (const auto& row : five_square_field_generator(10))
    if (row.m == 2 && row.n == 3 && row.D == 409) found = true;
  c.require("generator emits D=409 from (2,3)", found);
  if (c.ok)
    c.note("run 5 at (49,120); Q-max 3; no six-square witnesses; D=409 generated");
  return {8, "progression searches", c.ok, c.detail.str()};
}

CriterionResult local_solvability() {
  Check c;
  c.require("conic (1,1,-3) unsolvable", !conic_has_rational_point(ConicForm(1, 1, -3)).solvable);
  c.require("conic (4,1,-3) unsolvable", !conic_has_rational_point(ConicForm(4, 1, -3)).solvable);
  auto dec = conic_has_rational_point(ConicForm(1, -2, 1));
  c.require("conic (1,-2,1) solvable", dec.solvable);
  std::mt19937_64 rng(2027);
  for (int i = 0; i < 1000; ++i) {
    Int a = Int(static_cast<long>(rng() % 10000)) + 1;
    Int b = Int(static_cast<long>(rng() % 10000)) + 1;
    if (rng() % 2) a = -a;
    if (rng() % 2) b = -b;
    int prod = hilbert_symbol(Rat(a), Rat(b), Place::at_infinity()) *
               hilbert_symbol(Rat(a), Rat(b), Place::at_prime(2));
    for (const auto& [p, e] : factorize(a * b)) {
      if (p == 2) continue;
      prod *= hilbert_symbol(Rat(a), Rat(b), Place::at_prime(p));
    }
    c.require("hilbert reciprocity", prod == 1);
  }
  if (c.ok) c.note("target conics decided; reciprocity on 1000 random pairs");
  return {9, "local solvability", c.ok, c.detail.str()};
}

CriterionResult galois_classification() {
  Check c;
  QuadraticField K13(13);
  auto C13 = QuadricCurveT<QuadraticField>::c3(K13);
  ProjPoint<QuadraticField> P13{{K13.from_int(1), K13.make(10, 3), K13.make(15, 4),
                                 K13.make(18, 5)}};
  auto rep13 = galois_case(C13, K13, P13);
  c.require("Q(sqrt 13) point is Case 1", rep13.kind == GaloisCase::Case1);
  ProjPoint<QuadraticField> expect13{{K13.neg(P13.x[3]), P13.x[2], K13.neg(P13.x[1]),
                                      P13.x[0]}};
  c.require("P^sigma = [-x3:x2:-x1:x0]", proj_eq(K13, rep13.sigma_point, expect13));

  QuadraticField K73(73);
  auto C73 = QuadricCurveT<QuadraticField>::c3(K73);
  ProjPoint<QuadraticField> P73{{K73.from_int(1), K73.from_int(5), K73.from_int(7),
                                 K73.sqrt_gen()}};
  auto rep73 = galois_case(C73, K73, P73);
  c.require("Q(sqrt 73) point is Case 2", rep73.kind == GaloisCase::Case2);
  c.require("phi_3 = [1:24]",
            rep73.rational_phi && rep73.rational_phi->first == 1 &&
                rep73.rational_phi->second == 24);

  // Empirical check of the C_4 proposition: every non-trivial point found
  // by a bounded coordinate search over Q(sqrt D) has a rational
  // progression class. x2, x3, x4 are solved from (x0, x1) by repeated
  // square roots in K, so the scan covers all points with small lead
  // coordinates.
  // Lead coordinates are normalized against the sign and conjugation
  // symmetries: x0 has u0, v0 >= 0 (joint conjugation flips v1's sign, so
  // v1 runs over both signs), x1 has u1 >= 0.
  long nontrivial = 0;
  CurveFamily c4(4, 2);
  for (long d : {2L, 3L, 5L, 13L, 73L, 409L}) {
    QuadraticField K(d);
    auto sq = [&](const QuadFieldElem& z) { return qf_mul(z, z); };
    for (long u0 = 0; u0 <= 24; ++u0)
      for (long v0 = 0; v0 <= 8; ++v0)
        for (long u1 = 0; u1 <= 24; ++u1)
          for (long v1 = -8; v1 <= 8; ++v1) {
            if (u0 == 0 && v0 == 0) continue;
            if (u1 == 0 && v1 == 0) continue;
            QuadFieldElem x0 = K.make(u0, v0), x1 = K.make(u1, v1);
            QuadFieldElem a = sq(x0);
            QuadFieldElem r = qf_sub(sq(x1), a);
            if (K.is_zero(r)) continue;  // constant progression: trivial point
            auto x2 = qf_is_square(qf_add(a, qf_mul(K.from_int(2), r)));
            if (!x2) continue;
            auto x3 = qf_is_square(qf_add(a, qf_mul(K.from_int(3), r)));
            if (!x3) continue;
            auto x4 = qf_is_square(qf_add(a, qf_mul(K.from_int(4), r)));
            if (!x4) continue;
            ProjPoint<QuadraticField> P{{x0, x1, *x2, *x3, *x4}};
            if (!is_on_curve(c4, K, P)) {
              c.ok = false;
              c.detail << "[constructed point off C_4] ";
              continue;
            }
            ++nontrivial;
            bool phi_rational =
                K.eq(qf_mul(a, K.conjugate(r)), qf_mul(K.conjugate(a), r));
            if (!phi_rational) {
              c.ok = false;
              c.detail << "[irrational phi_4 at D=" << d << " x0=" << qf_str(x0)
                       << " x1=" << qf_str(x1) << "] ";
            }
          }
  }
  c.require("search found nontrivial C_4 points", nontrivial > 0);
  if (c.ok) {
    c.detail << "Case1/Case2 exact; " << nontrivial
             << " nontrivial C_4 points over quadratic fields, all with rational phi_4";
  }
  return {10, "Galois classification and the C_4 proposition", c.ok, c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> out;
  out.push_back(counting_ground_truth());
  out.push_back(genus_hasse_weil());
  out.push_back(smoothness());
  out.push_back(gonality_frey());
  out.push_back(group_law());
  out.push_back(named_curves());
  out.push_back(cross_model());
  out.push_back(progression_searches());
  out.push_back(local_solvability());
  out.push_back(galois_classification());
  return out;
}

}  // namespace apsq
