#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "apsq/counting.hpp"
#include "apsq/quadric_ec.hpp"

using namespace apsq;

namespace {

ProjPoint<RationalField> qp(std::vector<long> v) {
  std::vector<Rat> c;
  for (long t : v) c.emplace_back(t);
  return ProjPoint<RationalField>{std::move(c)};
}

int count_minus(const ProjPoint<RationalField>& p) {
  int n = 0;
  for (const auto& c : p.x)
    if (c < 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("osculation data for C_3") {
  RationalField Q;
  auto C = QuadricCurveT<RationalField>::c3(Q);
  auto osc = osculation_data(C, Q);

  // Plane -X0 + 3X1 - 3X2 + X3 up to scalar.
  std::vector<Rat> expect{-1, 3, -3, 1};
  bool prop = true;
  for (int i = 0; i < 4 && prop; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (osc.plane[i] * expect[j] != osc.plane[j] * expect[i]) prop = false;
  CHECK(prop);

  CHECK(proj_eq(Q, osc.osculation_point, qp({1, -1, -1, 1})));
  CHECK(!osc.flex);

  // h(O) = 0 and O' on curve and plane.
  Rat at_base = 0;
  for (int i = 0; i < 4; ++i) at_base += osc.plane[i] * C.base.x[i];
  CHECK(at_base == 0);
  CHECK(quadric_member(C, Q, osc.osculation_point));

  // The plane meets the curve at O with multiplicity >= 3: perturbing the
  // known multiset must reproduce O' through the generic path as well.
  auto o2 = fourth_intersection(C, Q, {-1, 3, -3, 1}, {{C.base, 3}});
  CHECK(proj_eq(Q, o2, qp({1, -1, -1, 1})));
}

TEST_CASE("osculating plane meets the curve with multiplicity >= 3") {
  // Independent oracle: parametrize the conic (first quadric restricted to
  // the plane) by lines through O, pull the second quadric back to a binary
  // quartic and deflate. The parameter of O must be a root of multiplicity
  // >= 3, and the residual linear factor must give back O'.
  using Poly = std::vector<Rat>;  // binary form, coefficients of s^d, s^{d-1}t, ...
  auto pmul = [](const Poly& f, const Poly& g) {
    Poly h(f.size() + g.size() - 1, Rat(0));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
    return h;
  };
  // Exact division of a binary form by (b s - a t), i.e. deflation of the
  // root [a : b]; fails the test if the remainder is nonzero.
  auto deflate = [](const Poly& f, const Rat& a, const Rat& b) {
    Poly q(f.size() - 1, Rat(0));
    Poly rem = f;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      q[i] = rem[i] / b;  // b != 0 for the roots used here
      rem[i] -= q[i] * b;
      rem[i + 1] += q[i] * a;
    }
    REQUIRE(rem.back() == 0);
    for (const auto& c : rem) CHECK(c == 0);
    return q;
  };

  // Plane -x0 + 3x1 - 3x2 + x3 = 0 with basis rows; O = (1,1,1) in plane
  // coordinates (3s - 3t + u, s, t, u).
  std::vector<std::vector<Rat>> E{{3, 1, 0, 0}, {-3, 0, 1, 0}, {1, 0, 0, 1}};
  std::array<Rat, 4> qa{1, -2, 1, 0}, qb{0, 1, -2, 1};
  auto bil = [&](const std::array<Rat, 4>& q, const std::vector<Rat>& x,
                 const std::vector<Rat>& y) {
    Rat acc = 0;
    for (int i = 0; i < 4; ++i) acc += q[i] * x[i] * y[i];
    return acc;
  };
  auto amb = [&](const std::vector<Rat>& w) {  // plane coords -> ambient
    std::vector<Rat> x(4, Rat(0));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) x[i] += w[j] * E[j][i];
    return x;
  };
  std::vector<Rat> wO{1, 1, 1};
  auto O4 = amb(wO);
  REQUIRE(bil(qa, O4, O4) == 0);
  REQUIRE(bil(qb, O4, O4) == 0);

  // Lines through O in direction W = s*(1,0,0) + t*(0,1,0); the second
  // intersection with the first conic is X = q1(W) O - 2 B1(O, W) W, a
  // vector of binary quadratics in (s, t).
  std::vector<std::vector<Rat>> dirs{{1, 0, 0}, {0, 1, 0}};
  auto q1w = [&](const Rat& s, const Rat& t) {
    std::vector<Rat> w{s, t, 0};
    auto x = amb(w);
    return bil(qa, x, x);
  };
  auto b1ow = [&](const Rat& s, const Rat& t) {
    std::vector<Rat> w{s, t, 0};
    return bil(qa, O4, amb(w));
  };
  // Sample-and-interpolate is overkill: components of X are quadratics, so
  // build them coefficient-wise from the bilinear expansions.
  // q1(W) = alpha s^2 + beta st + gamma t^2:
  Rat alpha = q1w(1, 0), gamma = q1w(0, 1);
  Rat beta = q1w(1, 1) - alpha - gamma;
  // 2 B1(O, W) = d1 s + d2 t:
  Rat d1 = 2 * b1ow(1, 0), d2 = 2 * b1ow(0, 1);
  // X_j(s,t): cubic? No: q1(W) * O_j - (d1 s + d2 t) * W_j with W_j linear,
  // so X_j is quadratic: collect per plane coordinate j.
  std::array<Poly, 3> X;
  for (int j = 0; j < 3; ++j) {
    Poly f{alpha * wO[j], beta * wO[j], gamma * wO[j]};  // q1(W) O_j
    Poly wj(2, Rat(0));                                  // W_j = s*dirs0 + t*dirs1
    wj[0] = dirs[0][j];
    wj[1] = dirs[1][j];
    Poly sub = pmul(Poly{d1, d2}, wj);
    for (int i = 0; i < 3; ++i) f[i] -= sub[i];
    X[j] = f;
  }
  // F(s,t) = q2(ambient(X)) as a binary quartic.
  std::array<Poly, 4> Xamb;
  for (int i = 0; i < 4; ++i) {
    Poly acc(3, Rat(0));
    for (int j = 0; j < 3; ++j) {
      Poly scaled = X[j];
      for (auto& cf : scaled) cf *= E[j][i];
      for (int d = 0; d < 3; ++d) acc[d] += scaled[d];
    }
    Xamb[i] = acc;
  }
  Poly F(5, Rat(0));
  for (int i = 0; i < 4; ++i) {
    Poly sq = pmul(Xamb[i], Xamb[i]);
    for (int d = 0; d < 5; ++d) F[d] += qb[i] * sq[d];
  }
  // Parameter of O on the sweep: B1(O, W) = 0, i.e. d1 s + d2 t = 0.
  Rat oa = -d2, ob = d1;  // root [oa : ob]
  REQUIRE(ob != 0);
  Poly f3 = deflate(F, oa, ob);
  Poly f2 = deflate(f3, oa, ob);
  Poly f1 = deflate(f2, oa, ob);  // multiplicity >= 3 proven by exact division
  REQUIRE(f1.size() == 2);
  // Residual root [a* : b*] of f1 = b* s - a* t ... recover the 4th point.
  Rat as = -f1[1], bs = f1[0];
  Rat s = as, t = bs;
  std::vector<Rat> w4(3, Rat(0));
  for (int j = 0; j < 3; ++j) w4[j] = X[j][0] * s * s + X[j][1] * s * t + X[j][2] * t * t;
  auto x4 = amb(w4);
  // Must be O' = [1:-1:-1:1] projectively.
  std::vector<Rat> oprime{1, -1, -1, 1};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(x4[i] * oprime[j] == x4[j] * oprime[i]);
}

TEST_CASE("osculation data for F_1 and F_2") {
  RationalField Q;
  for (int which : {1, 2}) {
    auto C = which == 1 ? QuadricCurveT<RationalField>::f1(Q)
                        : QuadricCurveT<RationalField>::f2(Q);
    auto osc = osculation_data(C, Q);
    Rat at_base = 0;
    for (int i = 0; i < 4; ++i) at_base += osc.plane[i] * C.base.x[i];
    CHECK(at_base == 0);
    CHECK(quadric_member(C, Q, osc.osculation_point));
    Rat at_op = 0;
    for (int i = 0; i < 4; ++i) at_op += osc.plane[i] * osc.osculation_point.x[i];
    CHECK(at_op == 0);
  }
  // Regression baseline for F_1 (computed once with this code path).
  auto C1 = QuadricCurveT<RationalField>::f1(Q);
  auto osc1 = osculation_data(C1, Q);
  CHECK(proj_eq(Q, osc1.osculation_point, qp({1, -1, -1, 1})));
}

TEST_CASE("fourth intersection error paths") {
  RationalField Q;
  auto C = QuadricCurveT<RationalField>::c3(Q);
  // Known point off the plane section.
  CHECK_THROWS_AS(
      (void)fourth_intersection(C, Q, {1, 0, 0, 0}, {{C.base, 3}}), Error);
  // Base point must lie on the curve.
  ProjPoint<RationalField> off = qp({1, 2, 3, 4});
  std::array<long, 4> a{1, -2, 1, 0}, b{0, 1, -2, 1};
  CHECK_THROWS_AS((void)QuadricCurveT<RationalField>::diagonal(Q, a, b, off), Error);

  // A wrong multiset (O' claimed twice although the section divisor is
  // 3 O + O') defeats every pencil pairing: degenerate configuration.
  ProjPoint<RationalField> oprime = qp({1, -1, -1, 1});
  bool degenerate = false;
  try {
    (void)fourth_intersection(C, Q, {-1, 3, -3, 1}, {{oprime, 2}, {C.base, 1}});
  } catch (const Error& e) {
    degenerate = e.kind() == ErrorKind::DegenerateConfiguration;
  }
  CHECK(degenerate);
}

TEST_CASE("negation is coordinate reversal on C_3") {
  RationalField Q;
  auto C = QuadricCurveT<RationalField>::c3(Q);
  CHECK(proj_eq(Q, ec_neg(C, Q, C.base), C.base));  // identity is self-negative

  QuadraticField K(73);
  auto CK = QuadricCurveT<QuadraticField>::c3(K);
  ProjPoint<QuadraticField> P{{K.from_int(1), K.from_int(5), K.from_int(7), K.sqrt_gen()}};
  auto nP = ec_neg(CK, K, P);
  ProjPoint<QuadraticField> rev{{K.sqrt_gen(), K.from_int(7), K.from_int(5), K.from_int(1)}};
  CHECK(proj_eq(K, nP, rev));

  QuadraticField K13(13);
  auto CK13 = QuadricCurveT<QuadraticField>::c3(K13);
  ProjPoint<QuadraticField> P13{{K13.from_int(1), K13.make(10, 3), K13.make(15, 4),
                                 K13.make(18, 5)}};
  REQUIRE(quadric_member(CK13, K13, P13));
  auto n13 = ec_neg(CK13, K13, P13);
  ProjPoint<QuadraticField> rev13{{K13.make(18, 5), K13.make(15, 4), K13.make(10, 3),
                                   K13.from_int(1)}};
  CHECK(proj_eq(K13, n13, rev13));

  CHECK_THROWS_AS((void)ec_neg(C, Q, qp({1, 2, 3, 4})), Error);
}

TEST_CASE("addition identities on C_3") {
  RationalField Q;
  auto C = QuadricCurveT<RationalField>::c3(Q);

  CHECK(proj_eq(Q, ec_add(C, Q, qp({-1, 1, 1, 1}), qp({1, -1, 1, 1})), qp({-1, 1, -1, 1})));
  CHECK(proj_eq(Q, ec_scalar_mul(C, Q, 2, qp({-1, 1, 1, 1})), qp({1, -1, -1, 1})));
  CHECK(proj_eq(Q, ec_scalar_mul(C, Q, 4, qp({-1, 1, 1, 1})), C.base));
  CHECK(proj_eq(Q, ec_scalar_mul(C, Q, 0, qp({-1, 1, 1, 1})), C.base));

  // The four single-sign-flip translation formulas, on all eight trivial points.
  auto translations = std::vector<std::pair<ProjPoint<RationalField>,
                                            std::function<ProjPoint<RationalField>(
                                                const ProjPoint<RationalField>&)>>>{
      {qp({-1, 1, 1, 1}),
       [&](const ProjPoint<RationalField>& P) {
         return ProjPoint<RationalField>{{-P.x[3], P.x[2], P.x[1], P.x[0]}};
       }},
      {qp({1, -1, 1, 1}),
       [&](const ProjPoint<RationalField>& P) {
         return ProjPoint<RationalField>{{P.x[3], -P.x[2], P.x[1], P.x[0]}};
       }},
      {qp({1, 1, -1, 1}),
       [&](const ProjPoint<RationalField>& P) {
         return ProjPoint<RationalField>{{P.x[3], P.x[2], -P.x[1], P.x[0]}};
       }},
      // Translation by [1:1:1:-1] is [x3:x2:x1:-x0]: the mirror of the
      // [-1:1:1:1] case under coordinate reversal (it must restrict to
      // T at P = O, and order-2 plus order-4 elements of Z/2 x Z/4 always
      // have order 4).
      {qp({1, 1, 1, -1}),
       [&](const ProjPoint<RationalField>& P) {
         return ProjPoint<RationalField>{{P.x[3], P.x[2], P.x[1], -P.x[0]}};
       }},
  };
  auto trivials = trivial_points(CurveFamily(3, 2), Q);
  for (const auto& [T, formula] : translations) {
    for (const auto& P : trivials) {
      CHECK(proj_eq(Q, ec_add(C, Q, P, T), formula(P)));
    }
  }

  // Composite: P + [-1:1:-1:1] = [x0:-x1:x2:-x3].
  for (const auto& P : trivials) {
    ProjPoint<RationalField> expect{{P.x[0], -P.x[1], P.x[2], -P.x[3]}};
    CHECK(proj_eq(Q, ec_add(C, Q, P, qp({-1, 1, -1, 1})), expect));
  }

  // P + O = P.
  for (const auto& P : trivials) CHECK(proj_eq(Q, ec_add(C, Q, P, C.base), P));
}

TEST_CASE("all eight translation formulas via generator words") {
  // The eight trivial points form the torsion subgroup, generated by the
  // four single-sign-flip translations. Decompose each trivial T into a
  // word in the verified coordinate formulas (by applying them to O) and
  // check the composed formula against ec_add on every curve point of a
  // couple of prime fields. This derives the composite translation
  // formulas without circular use of the group law.
  // Coordinate formulas as signed permutations: entry j holds +-(i+1),
  // meaning output_j = +-input_i. The four verified single-flip formulas:
  std::array<std::array<int, 4>, 4> gen{{
      {-4, 3, 2, 1},  // + [-1:1:1:1] = [-x3:x2:x1:x0]
      {4, -3, 2, 1},  // + [1:-1:1:1] = [x3:-x2:x1:x0]
      {4, 3, -2, 1},  // + [1:1:-1:1] = [x3:x2:-x1:x0]
      {4, 3, 2, -1},  // + [1:1:1:-1] = [x3:x2:x1:-x0]
  }};
  std::vector<int> idO{1, 2, 3, 4};
  auto image_of = [&](const std::vector<int>& act) {
    std::vector<int> img(4);
    for (int j = 0; j < 4; ++j) img[j] = act[j] > 0 ? 1 : -1;  // O has all 1s
    if (img[0] < 0)
      for (auto& s : img) s = -s;  // projective sign normalization
    return img;
  };
  std::map<std::vector<int>, std::vector<int>> by_image;  // sign pattern -> action
  std::vector<std::vector<int>> todo{idO};
  for (int depth = 0; depth <= 3; ++depth) {
    std::vector<std::vector<int>> next;
    for (const auto& act : todo) {
      auto img = image_of(act);
      if (!by_image.count(img)) by_image[img] = act;
      for (const auto& g : gen) {
        std::vector<int> composed(4);
        for (int j = 0; j < 4; ++j) {
          int src = std::abs(g[j]) - 1;
          composed[j] = g[j] > 0 ? act[src] : -act[src];
        }
        next.push_back(composed);
      }
    }
    todo = std::move(next);
  }
  CHECK(by_image.size() == 8);  // every trivial point reached

  for (std::uint64_t p : {11ull, 13ull}) {
    PrimeField F(p);
    auto Cp = QuadricCurveT<PrimeField>::c3(F);
    auto pts = enumerate_points(3, 2, F.fq());
    for (const auto& [img, act] : by_image) {
      std::vector<FqElem> tc(4);
      for (int j = 0; j < 4; ++j) tc[j] = img[j] == 1 ? F.one() : F.from_int(-1);
      ProjPoint<PrimeField> T{tc};
      for (const auto& P : pts) {
        std::vector<FqElem> expect(4);
        for (int j = 0; j < 4; ++j) {
          int src = std::abs(act[j]) - 1;
          expect[j] = act[j] > 0 ? P.x[src] : F.neg(P.x[src]);
        }
        CHECK(proj_eq(F, ec_add(Cp, F, P, T), ProjPoint<PrimeField>{expect}));
      }
    }
  }
}

TEST_CASE("trivial point orders follow the sign parity") {
  RationalField Q;
  for (int which : {0, 1, 2}) {
    auto C = which == 0   ? QuadricCurveT<RationalField>::c3(Q)
             : which == 1 ? QuadricCurveT<RationalField>::f1(Q)
                          : QuadricCurveT<RationalField>::f2(Q);
    for (const auto& P : trivial_points(CurveFamily(3, 2), Q)) {
      auto ord = point_order(C, Q, P, 8);
      REQUIRE(ord.has_value());
      int minus = count_minus(P);
      if (minus == 0) {
        CHECK(*ord == 1);
      } else if (minus % 2 == 0) {
        CHECK(*ord == 2);
      } else {
        CHECK(*ord == 4);
      }
    }
  }
}

TEST_CASE("group axioms over prime fields") {
  std::mt19937_64 rng(43);
  int triples_checked = 0;
  for (std::uint64_t p : {11ull, 13ull, 17ull, 19ull}) {
    PrimeField F(p);
    auto C = QuadricCurveT<PrimeField>::c3(F);
    // All points of C_3(F_p) by exhaustive fiber enumeration.
    auto pts = enumerate_points(3, 2, F.fq());
    REQUIRE(pts.size() >= 8);
    for (const auto& P : pts) REQUIRE(quadric_member(C, F, P));

    for (int i = 0; i < 55; ++i) {
      const auto& a = pts[rng() % pts.size()];
      const auto& b = pts[rng() % pts.size()];
      const auto& c = pts[rng() % pts.size()];
      auto ab = ec_add(C, F, a, b);
      CHECK(quadric_member(C, F, ab));
      CHECK(proj_eq(F, ab, ec_add(C, F, b, a)));
      CHECK(proj_eq(F, ec_add(C, F, ab, c), ec_add(C, F, a, ec_add(C, F, b, c))));
      CHECK(proj_eq(F, ec_add(C, F, a, ec_neg(C, F, a)), C.base));
      CHECK(proj_eq(F, ec_add(C, F, a, C.base), a));
      ++triples_checked;
    }

    // Negation = coordinate reversal, everywhere.
    for (const auto& P : pts) {
      ProjPoint<PrimeField> rev{{P.x[3], P.x[2], P.x[1], P.x[0]}};
      CHECK(proj_eq(F, ec_neg(C, F, P), rev));
    }

    // Translation formulas against ec_add on random points.
    PrimeField& Fr = F;
    ProjPoint<PrimeField> T{{Fr.from_int(-1), Fr.one(), Fr.one(), Fr.one()}};
    for (int i = 0; i < 25; ++i) {
      const auto& P = pts[rng() % pts.size()];
      ProjPoint<PrimeField> expect{{Fr.neg(P.x[3]), P.x[2], P.x[1], P.x[0]}};
      CHECK(proj_eq(F, ec_add(C, F, P, T), expect));
    }
  }
  CHECK(triples_checked >= 200);
}

TEST_CASE("galois classification") {
  QuadraticField K73(73);
  auto C73 = QuadricCurveT<QuadraticField>::c3(K73);
  ProjPoint<QuadraticField> P{{K73.from_int(1), K73.from_int(5), K73.from_int(7),
                               K73.sqrt_gen()}};
  auto rep = galois_case(C73, K73, P);
  CHECK(rep.kind == GaloisCase::Case2);
  REQUIRE(rep.rational_phi.has_value());
  CHECK(rep.rational_phi->first == 1);
  CHECK(rep.rational_phi->second == 24);

  QuadraticField K13(13);
  auto C13 = QuadricCurveT<QuadraticField>::c3(K13);
  ProjPoint<QuadraticField> P13{{K13.from_int(1), K13.make(10, 3), K13.make(15, 4),
                                 K13.make(18, 5)}};
  auto rep13 = galois_case(C13, K13, P13);
  CHECK(rep13.kind == GaloisCase::Case1);
  // P^sigma = [-x3 : x2 : -x1 : x0] exactly.
  ProjPoint<QuadraticField> expect{{K13.neg(P13.x[3]), P13.x[2], K13.neg(P13.x[1]),
                                    P13.x[0]}};
  CHECK(proj_eq(K13, rep13.sigma_point, expect));

  ProjPoint<QuadraticField> triv{{K13.one(), K13.one(), K13.one(), K13.one()}};
  CHECK(galois_case(C13, K13, triv).kind == GaloisCase::Rational);
}

TEST_CASE("unsupported characteristics are rejected") {
  CHECK_THROWS_AS((void)QuadricCurveT<PrimeField>::c3(PrimeField(3)), Error);
}
