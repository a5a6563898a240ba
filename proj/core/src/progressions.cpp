#include "apsq/progressions.hpp"

#include <algorithm>

#include "apsq/weierstrass.hpp"

namespace apsq {

namespace {

// t (an integer) is a square in Q(sqrt D) iff t or t*D is a perfect square.
bool square_in_k(const Int& t, const Int& D) {
  if (t == 0) return true;
  if (t > 0 && is_square(t)) return true;
  if (D != 1) {
    Int td = t * D;
    if (td > 0 && is_square(td)) return true;
  }
  return false;
}

Int largest_square_divisor(const Int& g) {
  Int s = 1;
  for (const auto& [p, e] : factorize(g))
    if (e >= 2) s *= pow_int(p, static_cast<unsigned long>(e - (e % 2)));
  return s;
}

}  // namespace

APSpec::APSpec(Int a_, Int r_) : a(std::move(a_)), r(std::move(r_)) {
  if (a == 0 && r == 0)
    throw_error(ErrorKind::InvalidArgument, "APSpec: a and r cannot both vanish");
  Int g = gcd_int(abs(a), abs(r));
  if (g != 1)
    throw_error(ErrorKind::InvalidArgument, "APSpec: a and r must be coprime");
}

APSpec APSpec::normalized(const Int& a, const Int& r) {
  if (a == 0 && r == 0)
    throw_error(ErrorKind::InvalidArgument, "APSpec: a and r cannot both vanish");
  Int g = gcd_int(abs(a), abs(r));
  if (g == 0) g = 1;
  Int s = largest_square_divisor(g);
  Int a2 = a / s, r2 = r / s;
  if (gcd_int(abs(a2), abs(r2)) != 1)
    throw_error(ErrorKind::InvariantViolation,
                "APSpec: residual non-square common factor; squareness-preserving "
                "scaling cannot reach a coprime representative");
  return APSpec(a2, r2);
}

long square_run_length(const APSpec& spec, const Int& D) {
  if (spec.r == 0)
    throw_error(ErrorKind::InvalidArgument,
                "square_run_length: constant progressions are excluded");
  std::optional<Int> cap;
  for (long i = 0;; ++i) {
    if (!cap && i > 64) {
      // The sublemma's witness caps the first non-square index.
      cap = nonsquare_witness(Rat(spec.a), Rat(spec.r), D).bound;
    }
    if (cap && Int(i) > *cap)
      throw_error(ErrorKind::InvariantViolation,
                  "square_run_length: run exceeded the witness bound");
    if (!square_in_k(spec.a + i * spec.r, D)) return i;
  }
}

namespace {

// Candidate leading terms: the squares of K = Q(sqrt D) within |a| <= A.
std::vector<Int> square_candidates(const Int& A, const Int& D) {
  std::vector<Int> out;
  for (Int s = 0; s * s <= A; ++s) out.push_back(s * s);
  if (D != 1) {
    for (Int s = 1; abs(D) * s * s <= A; ++s) out.push_back(D * s * s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

RunSearchResult max_square_run_search(const Int& A, const Int& R, const Int& D) {
  if (A < 1 || R < 1)
    throw_error(ErrorKind::InvalidArgument, "max_square_run_search: bounds must be >= 1");
  RunSearchResult res{0, {}};
  for (const Int& a : square_candidates(A, D)) {
    for (Int r = 1; r <= R; ++r) {
      if (gcd_int(abs(a), r) != 1) continue;
      // Inline early-exit run scan.
      long run = 0;
      while (square_in_k(a + run * r, D)) ++run;
      if (run > res.best) {
        res.best = run;
        res.witnesses.clear();
      }
      if (run == res.best && res.best > 0) res.witnesses.push_back(APSpec(a, r));
    }
  }
  return res;
}

std::vector<FiveSquareRow> five_square_field_generator(long B) {
  if (B < 1)
    throw_error(ErrorKind::InvalidArgument, "five_square_field_generator: bound must be >= 1");
  std::vector<FiveSquareRow> rows;
  for (long m = -B; m <= B; ++m) {
    for (long n = 0; n <= B; ++n) {
      if (n == 0 && m <= 0) continue;  // half-plane: (m,n) ~ (-m,-n)
      Int mi(m), ni(n);
      if (gcd_int(abs(mi), ni) != 1) continue;
      Int x0 = mi * mi + 2 * mi * ni - ni * ni;
      Int x1 = mi * mi + ni * ni;
      Int quartic = 4 * x1 * x1 - 3 * x0 * x0;  // = m^4-12m^3n+2m^2n^2+12mn^3+n^4
      if (quartic < 0 || !is_square(quartic)) continue;
      Int r = x1 * x1 - x0 * x0;
      if (r == 0) continue;
      Int a = x0 * x0;
      if (r < 0) {  // report the reversed, ascending progression
        a += 4 * r;
        r = -r;
      }
      // The discriminant comes from the one term that is not a rational
      // square (index 3 before reversal, 1 after).
      std::optional<Int> D;
      std::vector<Int> terms;
      int irrational = 0;
      for (int i = 0; i < 5; ++i) {
        Int t = a + i * r;
        terms.push_back(t);
        if (!(t > 0 && is_square(t))) {
          D = squarefree_part(t);
          ++irrational;
        }
      }
      if (irrational != 1 || !D || *D < 2)
        throw_error(ErrorKind::InvariantViolation,
                    "five_square_field_generator: expected exactly one non-square term");
      FiveSquareRow row{mi, ni, std::move(terms), APSpec::normalized(a, r), *D};
      if (square_run_length(row.spec, row.D) < 5)
        throw_error(ErrorKind::InvariantViolation,
                    "five_square_field_generator: emitted progression fails re-verification");
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::optional<APSpec> six_square_witness_search(const Int& D, const Int& A, const Int& R) {
  if (D == 0 || squarefree_part(D) != D)
    throw_error(ErrorKind::InvalidArgument, "six_square_witness_search: D must be squarefree");
  for (const Int& a : square_candidates(A, D)) {
    for (Int r = 1; r <= R; ++r) {
      if (gcd_int(abs(a), r) != 1) continue;
      bool all = true;
      for (int i = 1; i < 6 && all; ++i) all = square_in_k(a + i * r, D);
      if (all) return APSpec(a, r);
    }
  }
  return std::nullopt;
}

std::optional<ConicConstraint> conic_constraint_for(const std::vector<IndexTag>& tags,
                                                    const Int& D) {
  long dsq = 0;
  for (auto t : tags)
    if (t == IndexTag::DTimesSquare) ++dsq;
  if (D > 5) {
    if (dsq >= 2) {
      ConicConstraint c;
      c.two_index_conflict = true;
      c.description =
          "two indices are D times a square although no D > 5 can divide two "
          "terms of a coprime progression";
      return c;
    }
    return std::nullopt;
  }
  if (D == 2) {
    long n = static_cast<long>(tags.size());
    auto at = [&](long i, bool reflected) {
      return reflected ? tags[static_cast<std::size_t>(n - 1 - i)]
                       : tags[static_cast<std::size_t>(i)];
    };
    for (int reflected = 0; reflected < 2; ++reflected) {
      for (long i = 0; i + 3 < n; ++i) {
        // a_i = 2y^2, a_{i+2} = 2y^2, a_{i+3} = y^2  =>  y0^2 + y3^2 = 3 y2^2.
        if (at(i, reflected) == IndexTag::DTimesSquare &&
            at(i + 2, reflected) == IndexTag::DTimesSquare &&
            at(i + 3, reflected) == IndexTag::SquareInQ) {
          ConicConstraint c;
          c.conic = ConicForm(1, 1, -3);
          c.conic_solvable = conic_has_rational_point(*c.conic).solvable;
          c.description = "2 | a_i and 2 | a_{i+2}: forces y0^2 + y3^2 = 3 y2^2";
          return c;
        }
      }
      for (long i = 0; i + 3 < n; ++i) {
        // a_i = 2y^2, a_{i+1} = y^2, a_{i+3} = y^2  =>  4 y0^2 + y3^2 = 3 y1^2.
        if (at(i, reflected) == IndexTag::DTimesSquare &&
            at(i + 1, reflected) == IndexTag::SquareInQ &&
            at(i + 3, reflected) == IndexTag::SquareInQ) {
          ConicConstraint c;
          c.conic = ConicForm(4, 1, -3);
          c.conic_solvable = conic_has_rational_point(*c.conic).solvable;
          c.description = "2 | a_i with rational squares one and three steps on: "
                          "forces 4 y0^2 + y3^2 = 3 y1^2";
          return c;
        }
      }
    }
    return std::nullopt;
  }
  if ((D == 3 || D == 5) && dsq >= 2) {
    ConicConstraint c;
    c.description = "two D-divisible terms leave four rational squares in "
                    "progression, settled by the Fermat patterns";
    return c;
  }
  return std::nullopt;
}

ProgressionReport classify_ap_over_quadratic(const APSpec& spec, const Int& D, long length) {
  if (length < 1)
    throw_error(ErrorKind::InvalidArgument, "classify_ap_over_quadratic: length must be >= 1");
  ProgressionReport rep{spec, D, {}, 0, std::nullopt};
  for (long i = 0; i < length; ++i) {
    Int t = spec.a + i * spec.r;
    IndexTag tag;
    if (t == 0 || (t > 0 && is_square(t))) {
      tag = IndexTag::SquareInQ;
    } else if (D != 1 && t * D > 0 && is_square(Int(t * D))) {
      tag = IndexTag::DTimesSquare;
    } else {
      tag = IndexTag::NonSquare;
    }
    rep.tags.push_back(tag);
  }
  rep.run_length = spec.r == 0 ? length : square_run_length(spec, D);
  rep.constraint = conic_constraint_for(rep.tags, D);
  return rep;
}

FermatCheckResult fermat_lemma_check(FermatVariant variant, const Int& bound) {
  FermatCheckResult res;
  switch (variant) {
    case FermatVariant::C3: res.indices = {0, 1, 2, 3}; break;
    case FermatVariant::F1: res.indices = {0, 1, 3, 4}; break;
    case FermatVariant::F2: res.indices = {0, 2, 3, 5}; break;
  }
  res.refutation = std::nullopt;
  for (const Int& a : square_candidates(bound, 1)) {
    for (Int r = 1; r <= bound && !res.refutation; ++r) {
      if (gcd_int(abs(a), r) != 1) continue;
      bool all = true;
      for (long i : res.indices) {
        Int t = a + i * r;
        if (!(t == 0 || (t > 0 && is_square(t)))) {
          all = false;
          break;
        }
      }
      if (all) res.refutation = APSpec(a, r);
    }
    if (res.refutation) break;
  }

  WeierstrassCurve jac = variant == FermatVariant::C3   ? WeierstrassCurve(0, 1, -3)
                         : variant == FermatVariant::F1 ? WeierstrassCurve(0, 1, -8)
                                                        : WeierstrassCurve(0, 4, -5);
  res.descent_rank_bound = two_descent_rank_bound(jac).rank_upper_bound;
  res.torsion_order = torsion_subgroup(jac).order;
  res.holds = !res.refutation.has_value() && res.descent_rank_bound == 0 &&
              res.torsion_order == 8;
  return res;
}

}  // namespace apsq
