#include "apsq/apcurve.hpp"

#include <numeric>

#include "apsq/exactnum.hpp"

namespace apsq {

std::vector<Rat> roots_of_unity(const RationalField&, unsigned long k) {
  if (k % 2 == 0) return {Rat(1), Rat(-1)};
  return {Rat(1)};
}

std::vector<QuadFieldElem> roots_of_unity(const QuadraticField& f, unsigned long k) {
  // mu(Q(sqrt(D))) is cyclic of order 4 for D = -1 (powers of i), 6 for
  // D = -3 (powers of (1+sqrt(-3))/2), and 2 otherwise.
  unsigned long w = 2;
  QuadFieldElem gen = f.from_int(-1);
  if (f.D() == -1) {
    w = 4;
    gen = f.sqrt_gen();
  } else if (f.D() == -3) {
    w = 6;
    gen = f.make(Rat(1, 2), Rat(1, 2));
  }
  unsigned long u = std::gcd(k, w);
  QuadFieldElem step = field_pow(f, gen, w / u);
  std::vector<QuadFieldElem> out;
  QuadFieldElem z = f.one();
  for (unsigned long i = 0; i < u; ++i) {
    out.push_back(z);
    z = f.mul(z, step);
  }
  return out;
}

std::vector<FqElem> roots_of_unity(const PrimeField& f, unsigned long k) {
  std::vector<FqElem> out;
  const Fq& F = f.fq();
  std::uint64_t u = std::gcd<std::uint64_t>(k, F.q() - 1);
  for (std::uint64_t i = 0; i < F.q(); ++i) {
    FqElem x = F.decode(i);
    if (!F.is_zero(x) && F.eq(F.pow(x, u), F.one())) out.push_back(x);
  }
  return out;
}

Int genus(long n) {
  if (n < 2) throw_error(ErrorKind::InvalidArgument, "genus: n must be >= 2");
  return Int(n - 3) * pow2(static_cast<unsigned long>(n - 2)) + 1;
}

namespace {

// Gaussian elimination rank over F_p (m = 1).
long matrix_rank(const Fq& F, std::vector<std::vector<FqElem>> M) {
  long rank = 0;
  std::size_t rows = M.size();
  std::size_t cols = rows ? M[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && F.is_zero(M[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    FqElem inv = F.inv(M[r][c]);
    for (std::size_t j = c; j < cols; ++j) M[r][j] = F.mul(M[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || F.is_zero(M[i][c])) continue;
      FqElem factor = M[i][c];
      for (std::size_t j = c; j < cols; ++j)
        M[i][j] = F.sub(M[i][j], F.mul(factor, M[r][j]));
    }
    ++r;
    ++rank;
  }
  return rank;
}

FqElem determinant(const Fq& F, std::vector<std::vector<FqElem>> M) {
  std::size_t d = M.size();
  FqElem det = F.one();
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && F.is_zero(M[piv][c])) ++piv;
    if (piv == d) return F.zero();
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = F.neg(det);
    }
    det = F.mul(det, M[c][c]);
    FqElem inv = F.inv(M[c][c]);
    for (std::size_t i = c + 1; i < d; ++i) {
      if (F.is_zero(M[i][c])) continue;
      FqElem factor = F.mul(M[i][c], inv);
      for (std::size_t j = c; j < d; ++j)
        M[i][j] = F.sub(M[i][j], F.mul(factor, M[c][j]));
    }
  }
  return det;
}

std::vector<std::vector<FqElem>> jacobian_matrix(const CurveFamily& C, const Fq& F,
                                                 const ProjPoint<PrimeField>& P) {
  // Row i: d/dx_j of x_i^k - 2 x_{i+1}^k + x_{i+2}^k.
  std::size_t rows = static_cast<std::size_t>(C.n - 1);
  std::size_t cols = static_cast<std::size_t>(C.n + 1);
  std::vector<std::vector<FqElem>> M(rows, std::vector<FqElem>(cols, F.zero()));
  FqElem kk = F.from_int(static_cast<long long>(C.k % F.p()));
  for (std::size_t i = 0; i < rows; ++i) {
    FqElem di = F.mul(kk, F.pow(P.x[i], C.k - 1));
    FqElem di1 = F.mul(kk, F.pow(P.x[i + 1], C.k - 1));
    FqElem di2 = F.mul(kk, F.pow(P.x[i + 2], C.k - 1));
    M[i][i] = di;
    M[i][i + 1] = F.neg(F.add(di1, di1));
    M[i][i + 2] = di2;
  }
  return M;
}

void require_good_characteristic(const CurveFamily& C, const PrimeField& field) {
  std::uint64_t p = field.fq().p();
  if (field.fq().m() != 1)
    throw_error(ErrorKind::InvalidArgument, "jacobian checks run over prime fields");
  if (p <= static_cast<std::uint64_t>(C.n) || C.k % p == 0)
    throw_error(ErrorKind::UnsupportedCharacteristic,
                "jacobian checks need p > n and p not dividing k");
}

}  // namespace

JacobianRank jacobian_rank_check(const CurveFamily& C, const PrimeField& field,
                                 const ProjPoint<PrimeField>& P) {
  require_good_characteristic(C, field);
  if (!is_on_curve(C, field, P))
    throw_error(ErrorKind::InvalidArgument, "jacobian_rank_check: point not on curve");
  long rank = matrix_rank(field.fq(), jacobian_matrix(C, field.fq(), P));
  return JacobianRank{rank, rank == C.n - 1};
}

MinorValue jacobian_minor_closed_form(const CurveFamily& C, const PrimeField& field,
                                      const ProjPoint<PrimeField>& P, long j1, long j2) {
  if (C.k != 2)
    throw_error(ErrorKind::InvalidArgument,
                "jacobian_minor_closed_form: closed form is only stated for k = 2");
  if (!(0 <= j1 && j1 < j2 && j2 <= C.n))
    throw_error(ErrorKind::InvalidArgument, "jacobian_minor_closed_form: need 0 <= j1 < j2 <= n");
  require_good_characteristic(C, field);
  const Fq& F = field.fq();
  auto full = jacobian_matrix(C, F, P);
  std::vector<std::vector<FqElem>> M(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    for (long j = 0; j <= C.n; ++j) {
      if (j == j1 || j == j2) continue;
      M[i].push_back(full[i][static_cast<std::size_t>(j)]);
    }
  }
  FqElem direct = determinant(F, M);
  // |A_{j1,j2}| = +- 2^{n-1} (prod_{i != j1,j2} x_i) (j2 - j1).
  FqElem closed = F.pow(F.from_int(2), static_cast<std::uint64_t>(C.n - 1));
  for (long i = 0; i <= C.n; ++i) {
    if (i == j1 || i == j2) continue;
    closed = F.mul(closed, P.x[static_cast<std::size_t>(i)]);
  }
  closed = F.mul(closed, F.from_int(j2 - j1));
  int sign;
  if (F.eq(direct, closed)) {
    sign = F.is_zero(direct) ? 0 : 1;
  } else if (F.eq(direct, F.neg(closed))) {
    sign = -1;
  } else {
    throw_error(ErrorKind::InvariantViolation,
                "jacobian minor disagrees with the closed form");
  }
  return MinorValue{direct, closed, sign};
}

ProjPoint<QuadraticField> prettify(const QuadraticField& f, const ProjPoint<QuadraticField>& p) {
  // Clear denominators and strip shared integer content.
  auto reduce = [&](std::vector<QuadFieldElem> cs) {
    Int l = 1;
    for (const auto& c : cs) {
      Int d;
      mpz_lcm(d.get_mpz_t(), l.get_mpz_t(), c.u.get_den().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d.get_mpz_t(), c.v.get_den().get_mpz_t());
    }
    std::vector<QuadFieldElem> out;
    Int g = 0;
    for (const auto& c : cs) {
      QuadFieldElem s = f.mul(c, f.from_rational(Rat(l)));
      Int gg;
      mpz_gcd(gg.get_mpz_t(), g.get_mpz_t(), s.u.get_num().get_mpz_t());
      mpz_gcd(g.get_mpz_t(), gg.get_mpz_t(), s.v.get_num().get_mpz_t());
      out.push_back(s);
    }
    if (g > 1)
      for (auto& c : out) c = f.div(c, f.from_rational(Rat(g)));
    return out;
  };
  auto coords = reduce(p.x);
  // Dividing by sqrt(D) keeps integrality when D divides every rational
  // part; prefer that representative when it shrinks the entries
  // ((u + v sqrt D)/sqrt D = v + (u/D) sqrt D).
  for (int pass = 0; pass < 2; ++pass) {
    bool divisible = true;
    bool some_irrational = false;
    for (const auto& c : coords) {
      if (c.u.get_num() % f.D() != 0) divisible = false;
      if (c.v != 0) some_irrational = true;
    }
    if (!divisible || !some_irrational) break;
    for (auto& c : coords) c = f.div(c, f.sqrt_gen());
    coords = reduce(coords);
  }
  // Sign: first nonzero rational part positive when one exists.
  for (const auto& c : coords) {
    Rat lead = c.u != 0 ? c.u : c.v;
    if (lead == 0) continue;
    if (lead < 0)
      for (auto& t : coords) t = f.neg(t);
    break;
  }
  return ProjPoint<QuadraticField>{std::move(coords)};
}

}  // namespace apsq
