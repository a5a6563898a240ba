#include <doctest.h>

#include <map>
#include <random>

#include "apsq/finitefield.hpp"

using namespace apsq;

TEST_CASE("field construction") {
  Fq f7 = field_make(7, 1);
  CHECK(f7.q() == 7);
  Fq f49 = field_make(7, 2);
  CHECK(f49.q() == 49);
  CHECK(f49.modulus_s() == 3);  // 3 is the least non-residue mod 7
  CHECK_THROWS_AS((void)field_make(2, 2), Error);
  CHECK_THROWS_AS((void)field_make(2, 1), Error);
  CHECK_THROWS_AS((void)field_make(6, 1), Error);
  CHECK_THROWS_AS((void)field_make(5, 3), Error);
}

TEST_CASE("field arithmetic") {
  Fq f5 = field_make(5, 1);
  CHECK(f5.mul(f5.from_int(3), f5.from_int(4)) == f5.from_int(2));

  Fq f49 = field_make(7, 2);
  FqElem t = f49.make(0, 1);
  CHECK(f49.mul(t, t) == f49.from_int(3));  // t^2 = 3

  Fq f7 = field_make(7, 1);
  CHECK(f7.pow(f7.from_int(3), 6) == f7.one());  // Fermat

  CHECK_THROWS_AS((void)f7.div(f7.one(), f7.zero()), Error);

  // Inverses across the whole of F_49.
  for (std::uint64_t i = 1; i < 49; ++i) {
    FqElem x = f49.decode(i);
    CHECK(f49.mul(x, f49.inv(x)) == f49.one());
  }
}

TEST_CASE("residue tables") {
  Fq f5 = field_make(5, 1);
  ResidueTable t52 = residue_table(f5, 2);
  CHECK(t52.at(0) == 1);
  CHECK(t52.at(1) == 2);
  CHECK(t52.at(4) == 2);
  CHECK(t52.at(2) == 0);
  CHECK(t52.at(3) == 0);

  Fq f7 = field_make(7, 1);
  ResidueTable t73 = residue_table(f7, 3);
  CHECK(t73.at(0) == 1);
  CHECK(t73.at(1) == 3);
  CHECK(t73.at(6) == 3);
  for (std::uint64_t v : {2, 3, 4, 5}) CHECK(t73.at(v) == 0);

  ResidueTable t53 = residue_table(f5, 3);  // gcd(3,4)=1: bijection
  for (std::uint64_t v = 0; v < 5; ++v) CHECK(t53.at(v) == 1);

  // Enumeration oracle + the sum invariant over several fields.
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, int>>{{5, 1}, {7, 1}, {5, 2}, {7, 2}, {11, 1}}) {
    Fq F = field_make(p, m);
    for (unsigned long k : {2ul, 3ul, 4ul}) {
      ResidueTable T = residue_table(F, k);
      std::map<std::uint64_t, std::uint32_t> oracle;
      for (std::uint64_t i = 0; i < F.q(); ++i) oracle[F.encode(F.pow(F.decode(i), k))]++;
      std::uint64_t sum = 0;
      for (std::uint64_t enc = 0; enc < F.q(); ++enc) {
        CHECK(T.at(enc) == (oracle.count(enc) ? oracle[enc] : 0));
        sum += T.at(enc);
        if (enc != 0) {
          bool ok = T.at(enc) == 0 || T.at(enc) == T.g;
          CHECK(ok);
        }
      }
      CHECK(sum == F.q());
      CHECK(T.at(0) == 1);
    }
  }
}

TEST_CASE("kth roots") {
  Fq f5 = field_make(5, 1);
  auto r = kth_roots(f5, f5.from_int(4), 2);
  REQUIRE(r.size() == 2);
  CHECK(((r[0] == f5.from_int(2) && r[1] == f5.from_int(3)) ||
         (r[0] == f5.from_int(3) && r[1] == f5.from_int(2))));
  CHECK(kth_roots(f5, f5.from_int(2), 2).empty());

  Fq f7 = field_make(7, 1);
  auto c = kth_roots(f7, f7.one(), 3);
  REQUIRE(c.size() == 3);  // 1, 2, 4

  // Lengths match the residue table for q <= 49.
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, int>>{{5, 1}, {7, 1}, {7, 2}}) {
    Fq F = field_make(p, m);
    ResidueTable T = residue_table(F, 3);
    for (std::uint64_t enc = 0; enc < F.q(); ++enc)
      CHECK(kth_roots(F, F.decode(enc), 3).size() == T.at(enc));
  }
}

TEST_CASE("frobenius is a field homomorphism on F_p2") {
  Fq F = field_make(13, 2);
  std::mt19937_64 rng(23);
  auto frob = [&](const FqElem& x) { return F.pow(x, F.p()); };
  for (int i = 0; i < 1000; ++i) {
    FqElem x = F.decode(rng() % F.q());
    FqElem y = F.decode(rng() % F.q());
    CHECK(frob(F.add(x, y)) == F.add(frob(x), frob(y)));
    CHECK(frob(F.mul(x, y)) == F.mul(frob(x), frob(y)));
  }
}
