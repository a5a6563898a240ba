#include "apsq/counting.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numeric>

#include "apsq/parallel.hpp"

namespace apsq {

namespace {

unsigned g_threads_override = 0;
std::once_flag g_env_once;
unsigned g_env_threads = 1;

unsigned env_threads() {
  std::call_once(g_env_once, [] {
    if (const char* s = std::getenv("APSQ_THREADS")) {
      long v = std::atol(s);
      if (v >= 1 && v <= 256) g_env_threads = static_cast<unsigned>(v);
    }
  });
  return g_env_threads;
}

}  // namespace

unsigned thread_count() { return g_threads_override ? g_threads_override : env_threads(); }
void set_thread_count(unsigned n) { g_threads_override = n; }

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

Int u128_to_int(u128 v) {
  Int hi(static_cast<unsigned long>(v >> 64));
  Int lo(static_cast<unsigned long>(v & ~u64(0)));
  return (hi << 64) + lo;
}

// Sum over a in [a_begin, a_end) of prod_{i=0..n} rho(a + i*r), all indices
// in the canonical dense encoding. Componentwise stepping keeps the inner
// loop addition-only.
u128 fiber_sum_range(const Fq& F, const ResidueTable& T, long n, u64 r_enc, u64 a_begin,
                     u64 a_end) {
  const u64 p = F.p();
  const bool quadratic = F.m() == 2;
  u128 acc = 0;
  for (u64 a = a_begin; a < a_end; ++a) {
    u64 t0 = a % p, t1 = a / p;
    const u64 r0 = r_enc % p, r1 = r_enc / p;
    u128 prod = T.rho[a];
    for (long i = 1; i <= n && prod != 0; ++i) {
      t0 += r0;
      if (t0 >= p) t0 -= p;
      if (quadratic) {
        t1 += r1;
        if (t1 >= p) t1 -= p;
      }
      prod *= T.rho[t0 + t1 * p];
    }
    acc += prod;
  }
  return acc;
}

struct U128Acc {
  u128 v = 0;
  U128Acc& operator+=(const U128Acc& o) {
    v += o.v;
    return *this;
  }
};

}  // namespace

CountResult count_points(long n, unsigned long k, const Fq& F) {
  if (n < 2 || k < 2)
    throw_error(ErrorKind::InvalidArgument, "count_points: need n >= 2, k >= 2");
  ResidueTable T = residue_table(F, k);  // enforces the q <= 2^26 guard
  const u64 q = F.q();
  const u64 g = T.g;

  // Overflow headroom: per-a products are bounded by g^{n+1}, coset sums by
  // q * g^{n+1} and the weighted total by q^3 * g^{n+1}; keep it all clear
  // of 2^127.
  {
    double bits = static_cast<double>(n + 1) * std::log2(static_cast<double>(g) + 1.0);
    if (bits + 82.0 > 126.0)
      throw_error(ErrorKind::ResourceLimit, "count_points: fiber products exceed 128 bits");
  }

  // r = 0 stratum: progressions constant at a != 0.
  u128 total = 0;
  for (u64 a = 1; a < q; ++a) {
    u128 prod = 1;
    for (long i = 0; i <= n && prod != 0; ++i) prod *= T.rho[a];
    total += prod;
  }

  // Coset representatives of F_q* / (F_q*)^k. H = image of x -> x^k is
  // exactly the support of rho on F_q*.
  std::vector<u64> image;
  image.reserve((q - 1) / g);
  for (u64 t = 1; t < q; ++t)
    if (T.rho[t] != 0) image.push_back(t);
  std::vector<bool> covered(q, false);
  std::vector<u64> reps;
  for (u64 t = 1; t < q; ++t) {
    if (covered[t]) continue;
    reps.push_back(t);
    FqElem te = F.decode(t);
    for (u64 h : image) covered[F.encode(F.mul(F.decode(h), te))] = true;
  }
  if (reps.size() != g)
    throw_error(ErrorKind::InvariantViolation, "count_points: coset decomposition failed");

  u128 weight = (q - 1) / g;
  for (u64 r : reps) {
    U128Acc sum = parallel_reduce<U128Acc>(0, q, U128Acc{}, [&](u64 lo, u64 hi) {
      return U128Acc{fiber_sum_range(F, T, n, r, lo, hi)};
    });
    total += weight * sum.v;
  }

  Int total_int = u128_to_int(total);
  Int qm1(static_cast<unsigned long>(q - 1));
  if (total_int % qm1 != 0)
    throw_error(ErrorKind::InvariantViolation,
                "count_points: affine total not divisible by q-1");
  return CountResult{n, k, F.p(), F.m(), q, total_int / qm1, CountMethod::FiberFormula};
}

Int count_points_reference(long n, unsigned long k, const Fq& F) {
  ResidueTable T = residue_table(F, k);
  const u64 q = F.q();
  u128 total = 0;
  for (u64 a = 0; a < q; ++a) {
    for (u64 r = 0; r < q; ++r) {
      if (a == 0 && r == 0) continue;
      total += fiber_sum_range(F, T, n, r, a, a + 1);
    }
  }
  Int total_int = u128_to_int(total);
  Int qm1(static_cast<unsigned long>(q - 1));
  if (total_int % qm1 != 0)
    throw_error(ErrorKind::InvariantViolation, "reference count: inexact division");
  return total_int / qm1;
}

namespace {

// Walks the canonical representatives of P^n(F_q) (leading coordinate 1 at
// each pivot, zeros before, free coordinates after) and calls fn on every
// representative lying on C_{n,k}. Membership uses a precomputed x -> x^k
// table, so the odometer loop is allocation-free.
template <typename Fn>
void scan_curve_points(long n, unsigned long k, const Fq& F, Fn&& fn) {
  const u64 q = F.q();
  const u64 p = F.p();
  double size = 1;
  for (long i = 0; i < n; ++i) size *= static_cast<double>(q);
  if (size > 1e8)
    throw_error(ErrorKind::ResourceLimit, "point enumeration: q^n exceeds 10^8");

  std::vector<FqElem> powk(q);
  for (u64 i = 0; i < q; ++i) powk[i] = F.pow(F.decode(i), k);

  std::vector<u64> enc(static_cast<std::size_t>(n + 1), 0);
  auto on_curve = [&]() {
    for (long i = 0; i + 2 <= n; ++i) {
      const FqElem &a = powk[enc[i]], &b = powk[enc[i + 1]], &c = powk[enc[i + 2]];
      u64 c0 = (a.c0 + 2 * (p - b.c0) + c.c0) % p;
      u64 c1 = (a.c1 + 2 * (p - b.c1) + c.c1) % p;
      if (c0 || c1) return false;
    }
    return true;
  };
  for (long lead = 0; lead <= n; ++lead) {
    long nfree = n - lead;
    for (long i = 0; i <= n; ++i) enc[i] = 0;
    enc[lead] = 1;  // encoding of the field element 1
    while (true) {
      if (on_curve()) fn(enc);
      if (nfree == 0) break;
      long pos = 0;
      while (pos < nfree && ++enc[lead + 1 + pos] == q) enc[lead + 1 + pos++] = 0;
      if (pos == nfree) break;
    }
  }
}

}  // namespace

std::vector<ProjPoint<PrimeField>> enumerate_points(long n, unsigned long k, const Fq& F) {
  std::vector<ProjPoint<PrimeField>> points;
  scan_curve_points(n, k, F, [&](const std::vector<u64>& enc) {
    std::vector<FqElem> coords;
    coords.reserve(enc.size());
    for (u64 e : enc) coords.push_back(F.decode(e));
    points.push_back(ProjPoint<PrimeField>{std::move(coords)});
  });
  return points;
}

CountResult count_points_bruteforce(long n, unsigned long k, const Fq& F) {
  Int count = 0;
  scan_curve_points(n, k, F, [&](const std::vector<u64>&) { ++count; });
  return CountResult{n, k, F.p(), F.m(), F.q(), count, CountMethod::BruteForce};
}

bool hasse_weil_check(long n, std::uint64_t p) {
  if (p <= static_cast<std::uint64_t>(n))
    throw_error(ErrorKind::UnsupportedCharacteristic, "hasse_weil_check: need p > n");
  Fq F = field_make(p, 1);
  Int count = count_points(n, 2, F).count;
  Int dev = count - Int(static_cast<unsigned long>(p + 1));
  Int g = genus(n);
  // dev^2 <= 4 g^2 p, both sides exact integers.
  return dev * dev <= 4 * g * g * Int(static_cast<unsigned long>(p));
}

GonalityReport gonality_lower_bound(long n, unsigned long k, int m_max) {
  if (n < 2) throw_error(ErrorKind::InvalidArgument, "gonality_lower_bound: n must be >= 2");
  if (m_max < 1 || m_max > 2)
    throw_error(ErrorKind::InvalidArgument, "gonality_lower_bound: m_max must be 1 or 2");

  GonalityReport rep;
  rep.n = n;
  rep.k = k;
  rep.window_extended = false;
  if (k == 2 && n >= 3) {
    rep.corollary_bound = corollary_closed_form(n);
    rep.upper_bound = pow2(static_cast<unsigned long>(n - 2));
  }

  // Prime window (n, 2n), doubled until an admissible prime exists. For odd
  // k Dirichlet guarantees p = 1 mod k eventually; the doubling policy stands
  // in for the ineffective constant.
  std::vector<std::uint64_t> primes;
  std::uint64_t hi = 2 * static_cast<std::uint64_t>(n);
  while (true) {
    for (std::uint64_t c = static_cast<std::uint64_t>(n) + 1; c < hi; ++c) {
      if (!is_prime(Int(static_cast<unsigned long>(c)))) continue;
      if (k % c == 0) continue;
      if (k % 2 == 1 && c % k != 1) continue;
      primes.push_back(c);
    }
    if (!primes.empty()) break;
    hi *= 2;
    rep.window_extended = true;
  }
  rep.window_hi = hi;

  rep.lower_bound = 0;
  for (std::uint64_t p : primes) {
    for (int m = 1; m <= m_max; ++m) {
      if (m == 2 && p > (std::uint64_t(1) << 13)) break;
      Fq F = field_make(p, m);
      Int count = count_points(n, k, F).count;
      Int qm = Int(static_cast<unsigned long>(F.q()));
      Int cand = (count + qm) / (qm + 1);  // ceil(count / (q+1))
      if (cand > rep.lower_bound) {
        rep.lower_bound = cand;
        rep.witness = GonalityWitness{p, m, count};
      }
    }
  }
  return rep;
}

Rat corollary_closed_form(long n) {
  if (n < 3) throw_error(ErrorKind::InvalidArgument, "corollary_closed_form: n must be >= 3");
  Rat b(pow2(static_cast<unsigned long>(n - 1)), Int(n));
  b.canonicalize();
  return b;
}

FreyReport frey_threshold(long d, unsigned long k, int m_max) {
  if (d < 1) throw_error(ErrorKind::InvalidArgument, "frey_threshold: d must be >= 1");
  FreyReport rep;
  rep.d = d;
  rep.k = k;
  Int target(2 * d);
  for (long n = 3;; ++n) {
    GonalityReport g = gonality_lower_bound(n, k, m_max);
    if (g.lower_bound > target) {
      rep.computed_n = n;
      rep.computed_report = g;
      break;
    }
  }
  if (k == 2) {
    for (long n = 3;; ++n) {
      if (corollary_closed_form(n) > Rat(target)) {
        rep.closed_form_n = n;
        break;
      }
    }
  }
  return rep;
}

}  // namespace apsq
