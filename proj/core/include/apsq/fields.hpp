#pragma once

// Uniform field interface over which the curve machinery is templated.
// Three exact fields with decidable equality: Q, Q(sqrt(D)) and F_q.

#include <concepts>
#include <string>

#include "apsq/exactnum.hpp"
#include "apsq/finitefield.hpp"
#include "apsq/ints.hpp"
#include "apsq/qfield.hpp"

namespace apsq {

template <typename F>
concept ExactField = requires(const F& f, const typename F::Element& a,
                              const typename F::Element& b) {
  { f.add(a, b) } -> std::same_as<typename F::Element>;
  { f.sub(a, b) } -> std::same_as<typename F::Element>;
  { f.mul(a, b) } -> std::same_as<typename F::Element>;
  { f.div(a, b) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.from_int(0L) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.eq(a, b) } -> std::same_as<bool>;
  { f.str(a) } -> std::same_as<std::string>;
};

struct RationalField {
  using Element = Rat;

  Element zero() const { return Rat(0); }
  Element one() const { return Rat(1); }
  Element from_int(long v) const { return Rat(v); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element div(const Element& a, const Element& b) const {
    if (b == 0) throw_error(ErrorKind::ArithmeticError, "division by zero in Q");
    return a / b;
  }
  Element neg(const Element& a) const { return -a; }
  bool is_zero(const Element& a) const { return a == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  std::string str(const Element& a) const { return a.get_str(); }
  Int characteristic() const { return 0; }
};

class QuadraticField {
 public:
  using Element = QuadFieldElem;

  explicit QuadraticField(Int D) : D_(std::move(D)) {
    if (D_ == 0 || D_ == 1 || squarefree_part_check())
      throw_error(ErrorKind::InvalidArgument, "QuadraticField: D must be squarefree, not 0 or 1");
  }

  const Int& D() const { return D_; }
  Element zero() const { return Element(D_, 0, 0); }
  Element one() const { return Element(D_, 1, 0); }
  Element from_int(long v) const { return Element(D_, Rat(v), 0); }
  Element from_rational(const Rat& u) const { return Element(D_, u, 0); }
  Element sqrt_gen() const { return Element(D_, 0, 1); }
  Element make(const Rat& u, const Rat& v) const { return Element(D_, u, v); }
  Element add(const Element& a, const Element& b) const { return qf_add(a, b); }
  Element sub(const Element& a, const Element& b) const { return qf_sub(a, b); }
  Element mul(const Element& a, const Element& b) const { return qf_mul(a, b); }
  Element div(const Element& a, const Element& b) const { return qf_div(a, b); }
  Element neg(const Element& a) const { return qf_neg(a); }
  Element conjugate(const Element& a) const { return conj(a); }
  bool is_zero(const Element& a) const { return a.u == 0 && a.v == 0; }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  std::string str(const Element& a) const { return qf_str(a); }
  Int characteristic() const { return 0; }

 private:
  bool squarefree_part_check() const { return squarefree_part(D_) != D_; }
  Int D_;
};

// F_p or F_{p^2} presented through the shared interface.
class PrimeField {
 public:
  using Element = FqElem;

  explicit PrimeField(Fq f) : F_(std::move(f)) {}
  PrimeField(std::uint64_t p, int m = 1) : F_(field_make(p, m)) {}

  const Fq& fq() const { return F_; }
  Element zero() const { return F_.zero(); }
  Element one() const { return F_.one(); }
  Element from_int(long v) const { return F_.from_int(v); }
  Element add(const Element& a, const Element& b) const { return F_.add(a, b); }
  Element sub(const Element& a, const Element& b) const { return F_.sub(a, b); }
  Element mul(const Element& a, const Element& b) const { return F_.mul(a, b); }
  Element div(const Element& a, const Element& b) const { return F_.div(a, b); }
  Element neg(const Element& a) const { return F_.neg(a); }
  bool is_zero(const Element& a) const { return F_.is_zero(a); }
  bool eq(const Element& a, const Element& b) const { return F_.eq(a, b); }
  std::string str(const Element& a) const { return F_.str(a); }
  Int characteristic() const { return Int(static_cast<unsigned long>(F_.p())); }

 private:
  Fq F_;
};

static_assert(ExactField<RationalField>);
static_assert(ExactField<QuadraticField>);
static_assert(ExactField<PrimeField>);

}  // namespace apsq
