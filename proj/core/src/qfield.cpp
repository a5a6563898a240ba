// Exact arithmetic in Q(sqrt(D)), squareness testing, and residue-field
// reduction. The non-square witness implements the run-length bound: a
// non-constant progression reduced mod a degree-1 prime can pass through at
// most (p+1)/2 consecutive squares.

#include "apsq/qfield.hpp"

#include <sstream>

#include "apsq/exactnum.hpp"

namespace apsq {

QuadFieldElem::QuadFieldElem(Int D_, Rat u_, Rat v_)
    : D(std::move(D_)), u(std::move(u_)), v(std::move(v_)) {
  if (D == 0) throw_error(ErrorKind::InvalidArgument, "QuadFieldElem: D must be nonzero");
  if (D == 1) {  // degenerate rational path
    u += v;
    v = 0;
    return;
  }
  if (squarefree_part(D) != D)
    throw_error(ErrorKind::InvalidArgument, "QuadFieldElem: D must be squarefree");
  u.canonicalize();
  v.canonicalize();
}

namespace {

void require_same_field(const QuadFieldElem& x, const QuadFieldElem& y) {
  // Rational elements (v = 0) embed in any Q(sqrt(D)).
  if (x.D != y.D && x.v != 0 && y.v != 0)
    throw_error(ErrorKind::InvalidArgument, "quadratic field mismatch");
}

Int field_d(const QuadFieldElem& x, const QuadFieldElem& y) {
  if (x.D == y.D) return x.D;
  if (x.v != 0) return x.D;
  if (y.v != 0) return y.D;
  return x.D != 1 ? x.D : y.D;
}

}  // namespace

QuadFieldElem qf_add(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  return QuadFieldElem(field_d(x, y), x.u + y.u, x.v + y.v);
}

QuadFieldElem qf_sub(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  return QuadFieldElem(field_d(x, y), x.u - y.u, x.v - y.v);
}

QuadFieldElem qf_mul(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  Int D = field_d(x, y);
  return QuadFieldElem(D, x.u * y.u + Rat(D) * x.v * y.v, x.u * y.v + x.v * y.u);
}

QuadFieldElem qf_neg(const QuadFieldElem& x) { return QuadFieldElem(x.D, -x.u, -x.v); }

QuadFieldElem conj(const QuadFieldElem& x) { return QuadFieldElem(x.D, x.u, -x.v); }

Rat norm(const QuadFieldElem& x) { return x.u * x.u - Rat(x.D) * x.v * x.v; }

QuadFieldElem qf_div(const QuadFieldElem& x, const QuadFieldElem& y) {
  require_same_field(x, y);
  if (y.u == 0 && y.v == 0)
    throw_error(ErrorKind::ArithmeticError, "qf_div: division by zero");
  Rat n = norm(y);
  QuadFieldElem num = qf_mul(x, conj(y));
  return QuadFieldElem(field_d(x, y), num.u / n, num.v / n);
}

std::string qf_str(const QuadFieldElem& x) {
  std::ostringstream os;
  if (x.v == 0) {
    os << x.u;
  } else {
    if (x.u != 0) os << x.u << (x.v > 0 ? "+" : "");
    if (x.v == 1) {
    } else if (x.v == -1) {
      os << "-";
    } else {
      os << x.v << "*";
    }
    os << "sqrt(" << x.D << ")";
  }
  return os.str();
}

std::optional<QuadFieldElem> qf_is_square(const QuadFieldElem& z) {
  const Int& D = z.D;
  if (z.v == 0) {
    // Rational z: z = w^2 or z = D * w^2 are the only square shapes, since
    // (a + b sqrt(D))^2 rational forces ab = 0.
    if (auto w = rat_sqrt_exact(z.u)) return QuadFieldElem(D, *w, 0);
    if (D != 1) {
      if (auto w = rat_sqrt_exact(z.u / Rat(D))) return QuadFieldElem(D, 0, *w);
    }
    return std::nullopt;
  }
  // z = u + v sqrt(D), v != 0: a root a + b sqrt(D) needs
  //   a^2 + D b^2 = u,  2ab = v,  and  (a^2 - D b^2)^2 = norm(z).
  auto n0 = rat_sqrt_exact(norm(z));
  if (!n0) return std::nullopt;
  for (const Rat& s : {Rat(*n0), Rat(-*n0)}) {
    Rat a2 = (z.u + s) / 2;
    auto a = rat_sqrt_exact(a2);
    if (!a) continue;
    if (*a == 0) continue;  // v != 0 needs a != 0
    Rat b = z.v / (2 * *a);
    QuadFieldElem w(D, *a, b);
    if (qf_mul(w, w) == z) return w;
  }
  return std::nullopt;
}

namespace {

// Least square root of a mod p for a residue a (0 <= result < p). p odd and
// small enough that a scan is fine for the desk-scale searches here.
std::optional<std::uint64_t> least_sqrt_mod(const Int& a, const Int& p) {
  Int am = a % p;
  if (am < 0) am += p;
  for (Int s = 0; s < p; ++s) {
    if ((s * s - am) % p == 0) return static_cast<std::uint64_t>(s.get_ui());
  }
  return std::nullopt;
}

std::uint64_t rat_mod(const Rat& x, const Int& p) {
  Int num = x.get_num() % p;
  if (num < 0) num += p;
  Int den = x.get_den() % p;
  // den invertible; the caller checked p does not divide the denominator.
  Int dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  Int r = (num * dinv) % p;
  return static_cast<std::uint64_t>(r.get_ui());
}

}  // namespace

std::optional<std::uint64_t> residue_reduction(const QuadFieldElem& z, const Int& p) {
  if (p < 3 || !is_prime(p))
    throw_error(ErrorKind::InvalidArgument, "residue_reduction: p must be an odd prime");
  if (z.u.get_den() % p == 0 || z.v.get_den() % p == 0)
    throw_error(ErrorKind::NotReducible, "residue_reduction: denominator divisible by p");
  if (z.D != 1 && z.D % p == 0) {
    return rat_mod(z.u, p);  // sqrt(D) |-> 0 at the ramified prime
  }
  if (z.D == 1 || z.v == 0) {
    Rat val = z.u + z.v;  // v = 0 except on the folded D = 1 path
    return rat_mod(val, p);
  }
  if (legendre_symbol(z.D, p) != 1) return std::nullopt;
  auto s = least_sqrt_mod(z.D, p);
  Int r = (Int(rat_mod(z.u, p)) + Int(rat_mod(z.v, p)) * Int(*s)) % p;
  return static_cast<std::uint64_t>(r.get_ui());
}

NonsquareWitness nonsquare_witness(const Rat& a, const Rat& r, const Int& D) {
  if (r == 0)
    throw_error(ErrorKind::InvalidArgument, "nonsquare_witness: r must be nonzero");
  for (Int p = 3;; p += 2) {
    if (!is_prime(p)) continue;
    if (a.get_den() % p == 0 || r.get_den() % p == 0) continue;
    if (D != 1) {
      if (D % p == 0) continue;  // keep to split primes: witnesses reproducible
      if (legendre_symbol(D, p) != 1) continue;
    }
    if (r.get_num() % p == 0) continue;  // constant reduced progression
    // Scan indices; the sublemma caps the first non-residue at (p+3)/2.
    Int bound = (p + 3) / 2;
    for (long n = 0; Int(n) <= bound; ++n) {
      Rat term = a + Rat(n) * r;
      std::uint64_t t = rat_mod(term, p);
      bool sq = t == 0 || legendre_symbol(Int(static_cast<unsigned long>(t)), p) == 1;
      if (!sq) return NonsquareWitness{p, n, bound};
    }
    throw_error(ErrorKind::InvariantViolation,
                "nonsquare_witness: run exceeded the (p+3)/2 ceiling");
  }
}

}  // namespace apsq
