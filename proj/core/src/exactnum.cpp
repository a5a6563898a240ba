// Exact integer/rational utilities and the local-global machinery for
// diagonal ternary conics: Legendre and Hilbert symbols, squarefree parts,
// and solvability decisions used by the six-squares case analysis.

#include "apsq/exactnum.hpp"

#include <algorithm>
#include <map>

namespace apsq {

namespace {

// Modular exponentiation on mpz.
Int powmod(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned long s) {
  Int x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;  // composite witness
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const int small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int p : small_primes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  // Deterministic for n < 3.3e24 with this base set.
  for (int a : small_primes) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 81) {
    // Outside the deterministic range fall back to GMP's BPSW + extra rounds.
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
  }
  return true;
}

namespace {

Int pollard_rho(const Int& n) {
  // Floyd cycle detection; n odd composite.
  if (n % 2 == 0) return 2;
  for (Int c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = gcd_int(abs(x - y), n);
    }
    if (d != n) return d;
  }
}

void factor_rec(Int n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n]++;
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(const Int& n) {
  if (n == 0) throw_error(ErrorKind::InvalidArgument, "factorize: n must be nonzero");
  Int m = abs(n);
  std::map<Int, int> acc;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    while (m % p == 0) {
      acc[p]++;
      m /= p;
    }
  }
  // Trial division up to 10^4 before handing the remainder to rho.
  for (Int p = 53; p * p <= m && p < 10000; p += 2) {
    while (m % p == 0) {
      acc[p]++;
      m /= p;
    }
  }
  if (m > 1) factor_rec(m, acc);
  return std::vector<std::pair<Int, int>>(acc.begin(), acc.end());
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int isqrt(const Int& n) {
  if (n < 0) throw_error(ErrorKind::InvalidArgument, "isqrt: negative input");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Int> kth_root_exact(const Int& n, unsigned long k) {
  if (k == 0) throw_error(ErrorKind::InvalidArgument, "kth_root_exact: k must be >= 1");
  if (n < 0 && k % 2 == 0) return std::nullopt;
  Int r;
  int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  if (!exact) return std::nullopt;
  return r;
}

std::optional<Rat> rat_sqrt_exact(const Rat& q) {
  if (q < 0) return std::nullopt;
  const Int& num = q.get_num();
  const Int& den = q.get_den();
  if (!is_square(num) || !is_square(den)) return std::nullopt;
  Rat r(isqrt(num), isqrt(den));
  r.canonicalize();
  return r;
}

Int rat_square_class(const Rat& q) {
  if (q == 0) throw_error(ErrorKind::InvalidArgument, "rat_square_class: zero input");
  return squarefree_part(q.get_num() * q.get_den());
}

int valuation(const Int& n, const Int& p) {
  if (n == 0) throw_error(ErrorKind::InvalidArgument, "valuation: n must be nonzero");
  Int m = n;
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

std::optional<Int> is_perfect_kth_power(const Int& n, unsigned long k) {
  if (k < 2) throw_error(ErrorKind::InvalidArgument, "is_perfect_kth_power: k must be >= 2");
  return kth_root_exact(n, k);
}

Int squarefree_part(const Int& n) {
  if (n == 0) throw_error(ErrorKind::InvalidArgument, "squarefree_part: n must be nonzero");
  Int d = n < 0 ? Int(-1) : Int(1);
  for (const auto& [p, e] : factorize(n)) {
    if (e % 2 != 0) d *= p;
  }
  return d;
}

std::vector<Int> primes_in_range(const Int& lo, const Int& hi) {
  if (lo < 2 || lo > hi)
    throw_error(ErrorKind::InvalidArgument, "primes_in_range: need 2 <= lo <= hi");
  std::vector<Int> out;
  for (Int p = lo + 1; p <= hi; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

int legendre_symbol(const Int& a, const Int& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || !is_prime(p))
    throw_error(ErrorKind::InvalidArgument, "legendre_symbol: p must be an odd prime");
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

namespace {

// (u-1)/2 mod 2 and (u^2-1)/8 mod 2 for odd u, the unit-class exponents of
// the 2-adic Hilbert symbol.
int eps2(const Int& u) {
  Int r = ((u - 1) / 2) % 2;
  return static_cast<int>(mpz_odd_p(r.get_mpz_t()) ? 1 : 0);
}
int omega2(const Int& u) {
  Int r = ((u * u - 1) / 8) % 2;
  return static_cast<int>(mpz_odd_p(r.get_mpz_t()) ? 1 : 0);
}

int hilbert_int(const Int& a, const Int& b, const Place& v) {
  if (v.infinite) return (a < 0 && b < 0) ? -1 : 1;
  const Int& p = v.p;
  int alpha = valuation(a, p);
  int beta = valuation(b, p);
  Int u = a / pow_int(p, alpha);
  Int w = b / pow_int(p, beta);
  if (p == 2) {
    int expo = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
    return expo % 2 == 0 ? 1 : -1;
  }
  // Odd p: (a,b)_p = (-1)^{alpha beta (p-1)/2} (u/p)^beta (w/p)^alpha.
  int sign = 1;
  if ((alpha % 2) && (beta % 2)) {
    Int e = (p - 1) / 2;
    if (mpz_odd_p(e.get_mpz_t())) sign = -sign;
  }
  if (beta % 2 && legendre_symbol(u, p) == -1) sign = -sign;
  if (alpha % 2 && legendre_symbol(w, p) == -1) sign = -sign;
  return sign;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0)
    throw_error(ErrorKind::InvalidArgument, "hilbert_symbol: arguments must be nonzero");
  // The symbol only depends on square classes, so a ~ num*den.
  Int ai = a.get_num() * a.get_den();
  Int bi = b.get_num() * b.get_den();
  if (!v.infinite && (v.p < 2 || !is_prime(v.p)))
    throw_error(ErrorKind::InvalidArgument, "hilbert_symbol: place must be prime or infinity");
  return hilbert_int(ai, bi, v);
}

ConicDecision conic_has_rational_point(const ConicForm& f, const Int& witness_bound) {
  // aX^2+bY^2+cZ^2 = 0 nontrivially over Q_v iff (-ac, -bc)_v = +1.
  Rat ma = Rat(-f.a * f.c);
  Rat mb = Rat(-f.b * f.c);
  bool solvable = hilbert_symbol(ma, mb, Place::at_infinity()) == 1 &&
                  hilbert_symbol(ma, mb, Place::at_prime(2)) == 1;
  if (solvable) {
    for (const auto& [p, e] : factorize(f.a * f.b * f.c)) {
      if (p == 2) continue;
      if (hilbert_symbol(ma, mb, Place::at_prime(p)) != 1) {
        solvable = false;
        break;
      }
    }
  }
  ConicDecision dec{solvable, std::nullopt};
  if (!solvable) return dec;
  // Small witness search. Signs never matter for a diagonal form, so
  // nonnegative coordinates suffice. Holzer: a solvable form has a solution
  // with |x| <= sqrt|bc|, |y| <= sqrt|ac|, which keeps the scan tiny.
  Int bx = Int(isqrt(Int(abs(f.b * f.c))) + 1);
  Int by = Int(isqrt(Int(abs(f.a * f.c))) + 1);
  if (bx > witness_bound) bx = witness_bound;
  if (by > witness_bound) by = witness_bound;
  for (Int x = 0; x <= bx && !dec.witness; ++x) {
    for (Int y = 0; y <= by && !dec.witness; ++y) {
      if (x == 0 && y == 0) continue;
      // Solve c z^2 = -(a x^2 + b y^2) for integer z.
      Int rhs = -(f.a * x * x + f.b * y * y);
      if (rhs % f.c != 0) continue;
      Int zz = rhs / f.c;
      if (zz < 0 || !is_square(zz)) continue;
      Int z = isqrt(zz);
      if (z > witness_bound) continue;
      std::array<Int, 3> w{x, y, z};
      Int g = gcd_int(gcd_int(w[0], w[1]), w[2]);
      if (g > 1)
        for (auto& t : w) t /= g;
      dec.witness = w;
    }
  }
  if (dec.witness) {
    const auto& w = *dec.witness;
    if (f.a * w[0] * w[0] + f.b * w[1] * w[1] + f.c * w[2] * w[2] != 0)
      throw_error(ErrorKind::InvariantViolation, "conic witness does not satisfy the form");
  }
  return dec;
}

}  // namespace apsq
