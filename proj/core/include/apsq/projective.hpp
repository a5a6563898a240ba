#pragma once

// Projective points over an exact field, with the canonical representatives
// the rest of the library relies on for dedup and reproducible output:
//   - over F_q: first nonzero coordinate scaled to 1;
//   - over Q:   primitive integer vector, first nonzero entry positive;
//   - over Q(sqrt(D)): first nonzero coordinate scaled to 1.
// Equality is always the representation-free cross-multiplication test.

#include <cstddef>
#include <sstream>
#include <vector>

#include "apsq/fields.hpp"

namespace apsq {

template <ExactField F>
struct ProjPoint {
  std::vector<typename F::Element> x;

  std::size_t dim() const { return x.size(); }
};

template <ExactField F>
ProjPoint<F> make_point(const F& field, std::vector<typename F::Element> coords) {
  bool all_zero = true;
  for (const auto& c : coords)
    if (!field.is_zero(c)) all_zero = false;
  if (coords.empty() || all_zero)
    throw_error(ErrorKind::InvalidArgument, "projective point: coordinates all zero");
  return ProjPoint<F>{std::move(coords)};
}

// Projective equality by cross multiplication: x_i y_j = x_j y_i for all i, j.
template <ExactField F>
bool proj_eq(const F& field, const ProjPoint<F>& a, const ProjPoint<F>& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (!field.eq(field.mul(a.x[i], b.x[j]), field.mul(a.x[j], b.x[i]))) return false;
  return true;
}

namespace detail {

template <ExactField F>
void scale_leading_one(const F& field, std::vector<typename F::Element>& v) {
  for (const auto& c : v) {
    if (!field.is_zero(c)) {
      auto inv = field.div(field.one(), c);
      for (auto& t : v) t = field.mul(t, inv);
      return;
    }
  }
}

}  // namespace detail

inline void canonicalize_coords(const RationalField&, std::vector<Rat>& v) {
  // Clear denominators, strip content, sign by first nonzero entry.
  Int l = 1;
  for (const auto& c : v) {
    Int d;
    mpz_lcm(d.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    l = d;
  }
  Int g = 0;
  std::vector<Int> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].get_num() * (l / v[i].get_den());
    Int gg;
    mpz_gcd(gg.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    g = gg;
  }
  int sign = 1;
  for (const auto& c : ints) {
    if (c != 0) {
      sign = c > 0 ? 1 : -1;
      break;
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rat(ints[i] * sign / g);
}

inline void canonicalize_coords(const QuadraticField& f, std::vector<QuadFieldElem>& v) {
  // When every coordinate ratio is rational the class lives in P^n(Q);
  // reduce it there (primitive integers, positive lead) so rational classes
  // print and compare as plain integer tuples. Otherwise scale the first
  // nonzero coordinate to 1.
  const QuadFieldElem* lead = nullptr;
  for (const auto& c : v) {
    if (!f.is_zero(c)) {
      lead = &c;
      break;
    }
  }
  if (!lead) return;
  bool rational_class = true;
  for (const auto& c : v) {
    // c / lead rational iff c * conj(lead) = conj(c) * lead.
    if (!(f.mul(c, f.conjugate(*lead)) == f.mul(f.conjugate(c), *lead))) {
      rational_class = false;
      break;
    }
  }
  if (!rational_class) {
    detail::scale_leading_one(f, v);
    return;
  }
  QuadFieldElem l = *lead;
  std::vector<Rat> ratios;
  ratios.reserve(v.size());
  for (const auto& c : v) {
    QuadFieldElem r = f.div(c, l);
    ratios.push_back(r.u);  // v-part vanishes for a rational class
  }
  canonicalize_coords(RationalField{}, ratios);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.from_rational(ratios[i]);
}

inline void canonicalize_coords(const PrimeField& f, std::vector<FqElem>& v) {
  detail::scale_leading_one(f, v);
}

template <ExactField F>
ProjPoint<F> canonical(const F& field, const ProjPoint<F>& p) {
  auto coords = p.x;
  canonicalize_coords(field, coords);
  return ProjPoint<F>{std::move(coords)};
}

template <ExactField F>
std::string point_str(const F& field, const ProjPoint<F>& p) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) os << ":";
    os << field.str(p.x[i]);
  }
  os << "]";
  return os.str();
}

// Display form over Q(sqrt(D)): scale by a rational to clear denominators
// and common integer content, so integral tuples print in their familiar form.
ProjPoint<QuadraticField> prettify(const QuadraticField& f, const ProjPoint<QuadraticField>& p);

}  // namespace apsq
