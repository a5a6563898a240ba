#pragma once

// End-to-end progression searches: maximal square runs over Q and Q(sqrt D),
// the conic-parametrized five-square generator, six-square non-existence
// scans, and the per-index classification feeding the case analysis that
// rules six squares out.

#include <optional>
#include <string>
#include <vector>

#include "apsq/exactnum.hpp"
#include "apsq/qfield.hpp"

namespace apsq {

// Coprime integer progression a + i*r. r = 0 is only allowed for constant
// checks; searches always run over r > 0.
struct APSpec {
  Int a;
  Int r;

  APSpec(Int a_, Int r_);

  // Scale an arbitrary integer pair down by the largest square divisor of
  // the gcd (the only scaling that preserves squareness), then require
  // coprimality.
  static APSpec normalized(const Int& a, const Int& r);
};

// Largest L such that a + i*r is a square in Q(sqrt D) for all 0 <= i < L.
// Termination is guaranteed by the non-square witness bound (p+3)/2.
long square_run_length(const APSpec& spec, const Int& D);

struct RunSearchResult {
  long best;
  std::vector<APSpec> witnesses;  // all coprime (a, r) attaining the best run
};

// Exhaustive scan over coprime (a, r) with |a| <= A, 0 < r <= R.
RunSearchResult max_square_run_search(const Int& A, const Int& R, const Int& D);

struct FiveSquareRow {
  Int m, n;                  // parameter pair
  std::vector<Int> terms;    // a_0 .. a_4 before normalization
  APSpec spec;               // normalized progression
  Int D;                     // squarefree field discriminant of a_3
};

// Parametrizes x0^2 + x2^2 = 2 x1^2 by coprime (m, n) and keeps the pairs
// whose fourth-step quartic m^4 - 12m^3n + 2m^2n^2 + 12mn^3 + n^4 is a
// perfect square; each surviving pair yields five squares in arithmetic
// progression over Q(sqrt D) with D = squarefree(3 x1^2 - 2 x0^2). Every
// output is re-verified with square_run_length >= 5.
std::vector<FiveSquareRow> five_square_field_generator(long B);

// A coprime spec with run length >= 6 within the bounds, if one exists;
// none is the expected outcome for every D.
std::optional<APSpec> six_square_witness_search(const Int& D, const Int& A, const Int& R);

enum class IndexTag { SquareInQ, DTimesSquare, SquareOnlyInK, NonSquare };

struct ConicConstraint {
  // Which step of the case analysis applies: for D > 5, two D-square
  // indices contradict coprimality; for D = 2 the two quoted conics decide.
  bool two_index_conflict = false;
  std::optional<ConicForm> conic;
  bool conic_solvable = false;
  std::string description;
};

struct ProgressionReport {
  APSpec spec;
  Int D;
  std::vector<IndexTag> tags;
  long run_length;
  std::optional<ConicConstraint> constraint;
};

// The pattern router, exposed for direct testing: matches the proof's
// D = 2 conic patterns (shift- and reflection-invariant) and the D > 5
// two-index conflict against a tag vector.
std::optional<ConicConstraint> conic_constraint_for(const std::vector<IndexTag>& tags,
                                                    const Int& D);

ProgressionReport classify_ap_over_quadratic(const APSpec& spec, const Int& D, long length);

enum class FermatVariant { C3, F1, F2 };

struct FermatCheckResult {
  bool holds;                       // no non-constant all-square pattern found
  std::vector<long> indices;        // the index pattern searched
  long descent_rank_bound;          // rank bound of the variant's Jacobian
  Int torsion_order;                // torsion order of the Jacobian
  std::optional<APSpec> refutation; // a witness, were one ever found
};

// Searches coprime (a, r) up to the bounds for a non-constant progression
// whose pattern indices are all squares over Q; cross-checks that the
// variant's Jacobian has rank bound 0 and torsion order 8.
FermatCheckResult fermat_lemma_check(FermatVariant variant, const Int& bound = 10000);

}  // namespace apsq
