#pragma once

// Implementation of the quadric-intersection group law. Only linear algebra
// over the exact base field is used: tangent/jet computations are solved
// order by order, and fourth intersection points come from splitting a
// degenerate member of the restricted conic pencil.

#include <algorithm>

namespace apsq {

namespace qe_detail {

template <ExactField F>
using Vec = std::vector<typename F::Element>;
template <ExactField F>
using Mat = std::vector<std::vector<typename F::Element>>;

// Gauss-Jordan kernel basis of M (rows x cols).
template <ExactField F>
Mat<F> nullspace(const F& f, Mat<F> M) {
  const std::size_t rows = M.size();
  const std::size_t cols = rows ? M[0].size() : 0;
  std::vector<long> pivot_col(rows, -1);
  std::vector<bool> is_pivot(cols, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && f.is_zero(M[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    auto inv = f.div(f.one(), M[r][c]);
    for (std::size_t j = 0; j < cols; ++j) M[r][j] = f.mul(M[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(M[i][c])) continue;
      auto t = M[i][c];
      for (std::size_t j = 0; j < cols; ++j) M[i][j] = f.sub(M[i][j], f.mul(t, M[r][j]));
    }
    pivot_col[r] = static_cast<long>(c);
    is_pivot[c] = true;
    ++r;
  }
  Mat<F> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    Vec<F> v(cols, f.zero());
    v[c] = f.one();
    for (std::size_t i = 0; i < r; ++i)
      v[static_cast<std::size_t>(pivot_col[i])] = f.neg(M[i][c]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// One solution of M x = rhs, if consistent.
template <ExactField F>
std::optional<Vec<F>> solve_linear(const F& f, Mat<F> M, Vec<F> rhs) {
  const std::size_t rows = M.size();
  const std::size_t cols = rows ? M[0].size() : 0;
  std::vector<long> pivot_col(rows, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && f.is_zero(M[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[r]);
    std::swap(rhs[piv], rhs[r]);
    auto inv = f.div(f.one(), M[r][c]);
    for (std::size_t j = 0; j < cols; ++j) M[r][j] = f.mul(M[r][j], inv);
    rhs[r] = f.mul(rhs[r], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(M[i][c])) continue;
      auto t = M[i][c];
      for (std::size_t j = 0; j < cols; ++j) M[i][j] = f.sub(M[i][j], f.mul(t, M[r][j]));
      rhs[i] = f.sub(rhs[i], f.mul(t, rhs[r]));
    }
    pivot_col[r] = static_cast<long>(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!f.is_zero(rhs[i])) return std::nullopt;
  Vec<F> x(cols, f.zero());
  for (std::size_t i = 0; i < r; ++i) x[static_cast<std::size_t>(pivot_col[i])] = rhs[i];
  return x;
}

template <ExactField F>
typename F::Element eval_diag(const F& f, const std::array<typename F::Element, 4>& q,
                              const Vec<F>& x) {
  auto acc = f.zero();
  for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(q[i], f.mul(x[i], x[i])));
  return acc;
}

template <ExactField F>
typename F::Element bilin_diag(const F& f, const std::array<typename F::Element, 4>& q,
                               const Vec<F>& x, const Vec<F>& y) {
  auto acc = f.zero();
  for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(q[i], f.mul(x[i], y[i])));
  return acc;
}

// 3x3 symmetric Gram matrix of a diagonal quadric restricted to the plane
// spanned by basis (3 four-vectors).
template <ExactField F>
Mat<F> restrict_conic(const F& f, const std::array<typename F::Element, 4>& q,
                      const Mat<F>& basis) {
  Mat<F> M(3, Vec<F>(3, f.zero()));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = bilin_diag(f, q, basis[i], basis[j]);
  return M;
}

template <ExactField F>
bool mat_is_zero(const F& f, const Mat<F>& M) {
  for (const auto& row : M)
    for (const auto& e : row)
      if (!f.is_zero(e)) return false;
  return true;
}

// q(w) = w^T M w for the symmetric Gram matrix.
template <ExactField F>
typename F::Element conic_eval(const F& f, const Mat<F>& M, const Vec<F>& w) {
  auto acc = f.zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc = f.add(acc, f.mul(M[i][j], f.mul(w[i], w[j])));
  return acc;
}

// Covector M p, the tangent line of the conic at a point p on it.
template <ExactField F>
Vec<F> conic_gradient(const F& f, const Mat<F>& M, const Vec<F>& p) {
  Vec<F> g(3, f.zero());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i] = f.add(g[i], f.mul(M[i][j], p[j]));
  return g;
}

template <ExactField F>
Vec<F> cross3(const F& f, const Vec<F>& a, const Vec<F>& b) {
  return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])),
          f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
          f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
}

template <ExactField F>
bool vec_is_zero(const F& f, const Vec<F>& v) {
  for (const auto& e : v)
    if (!f.is_zero(e)) return false;
  return true;
}

// Binary quadratic g(s,t) = q(s u + t v) as (s^2, st, t^2) coefficients.
template <ExactField F>
std::array<typename F::Element, 3> restrict_to_line(const F& f, const Mat<F>& M,
                                                    const Vec<F>& u, const Vec<F>& v) {
  auto quu = conic_eval(f, M, u);
  auto qvv = conic_eval(f, M, v);
  auto guv = f.zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) guv = f.add(guv, f.mul(M[i][j], f.mul(u[i], v[j])));
  return {quu, f.add(guv, guv), qvv};
}

}  // namespace qe_detail

template <ExactField F>
QuadricCurveT<F> QuadricCurveT<F>::diagonal(const F& f, std::array<long, 4> a,
                                            std::array<long, 4> b, ProjPoint<F> O) {
  QuadricCurveT C;
  for (int i = 0; i < 4; ++i) {
    C.qa[i] = f.from_int(a[i]);
    C.qb[i] = f.from_int(b[i]);
  }
  C.base = std::move(O);
  Int ch = f.characteristic();
  if (ch == 2 || ch == 3)
    throw_error(ErrorKind::UnsupportedCharacteristic,
                "quadric group law needs characteristic 0 or > 3");
  if (C.base.dim() != 4 || !quadric_member(C, f, C.base))
    throw_error(ErrorKind::InvalidCurve, "base point does not lie on both quadrics");
  // The two forms must span a genuine pencil.
  bool proportional = true;
  for (int i = 0; i < 4 && proportional; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!f.eq(f.mul(C.qa[i], C.qb[j]), f.mul(C.qa[j], C.qb[i]))) {
        proportional = false;
        break;
      }
  if (proportional)
    throw_error(ErrorKind::InvalidCurve, "the two quadrics are proportional");
  return C;
}

template <ExactField F>
QuadricCurveT<F> QuadricCurveT<F>::c3(const F& f) {
  ProjPoint<F> O{{f.one(), f.one(), f.one(), f.one()}};
  return diagonal(f, {1, -2, 1, 0}, {0, 1, -2, 1}, O);
}

template <ExactField F>
QuadricCurveT<F> QuadricCurveT<F>::f1(const F& f) {
  ProjPoint<F> O{{f.one(), f.one(), f.one(), f.one()}};
  return diagonal(f, {2, -3, 1, 0}, {0, 1, -3, 2}, O);
}

template <ExactField F>
QuadricCurveT<F> QuadricCurveT<F>::f2(const F& f) {
  ProjPoint<F> O{{f.one(), f.one(), f.one(), f.one()}};
  return diagonal(f, {1, -3, 2, 0}, {0, 2, -3, 1}, O);
}

template <ExactField F>
bool quadric_member(const QuadricCurveT<F>& C, const F& f, const ProjPoint<F>& P) {
  if (P.dim() != 4) throw_error(ErrorKind::InvalidArgument, "quadric point must live in P^3");
  return f.is_zero(qe_detail::eval_diag(f, C.qa, P.x)) &&
         f.is_zero(qe_detail::eval_diag(f, C.qb, P.x));
}

namespace qe_detail {

// Tangent space of the curve at P: kernel of both gradient covectors
// (q_i P_i). Two-dimensional (and containing P) exactly at smooth points.
template <ExactField F>
Mat<F> tangent_space(const QuadricCurveT<F>& C, const F& f, const ProjPoint<F>& P) {
  Mat<F> rows(2, Vec<F>(4));
  for (int i = 0; i < 4; ++i) {
    rows[0][i] = f.mul(C.qa[i], P.x[i]);
    rows[1][i] = f.mul(C.qb[i], P.x[i]);
  }
  auto N = nullspace(f, rows);
  if (N.size() != 2)
    throw_error(ErrorKind::InvalidCurve, "singular point on the quadric intersection");
  return N;
}

template <ExactField F>
bool proportional4(const F& f, const Vec<F>& a, const Vec<F>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!f.eq(f.mul(a[i], b[j]), f.mul(a[j], b[i]))) return false;
  return true;
}

// Osculating plane at P: the span of the degree-2 jet {P, T, V} where
// x(t) = P + t T + t^2 V solves both quadrics to order t^2.
template <ExactField F>
Vec<F> osculating_plane_at(const QuadricCurveT<F>& C, const F& f, const ProjPoint<F>& P) {
  auto N = tangent_space(C, f, P);
  Vec<F> T = proportional4(f, N[0], P.x) ? N[1] : N[0];
  // B_a(P, V) = -Q_a(T)/2, same for b.
  Mat<F> rows(2, Vec<F>(4));
  for (int i = 0; i < 4; ++i) {
    rows[0][i] = f.mul(C.qa[i], P.x[i]);
    rows[1][i] = f.mul(C.qb[i], P.x[i]);
  }
  auto half = f.div(f.one(), f.from_int(2));
  Vec<F> rhs{f.neg(f.mul(eval_diag(f, C.qa, T), half)),
             f.neg(f.mul(eval_diag(f, C.qb, T), half))};
  auto V = solve_linear(f, rows, rhs);
  if (!V) throw_error(ErrorKind::InvalidCurve, "jet lift failed at base point");
  Mat<F> span{P.x, T, *V};
  auto h = nullspace(f, span);
  if (h.size() != 1)
    throw_error(ErrorKind::InvalidCurve,
                "degenerate jet: curve contains a line through the point");
  return h[0];
}

template <ExactField F>
typename F::Element plane_eval(const F& f, const Vec<F>& h, const Vec<F>& x) {
  auto acc = f.zero();
  for (int i = 0; i < 4; ++i) acc = f.add(acc, f.mul(h[i], x[i]));
  return acc;
}

// Plane through a multiset of curve points (multiplicities summing to 3):
// tangency constraints replace repeated points.
template <ExactField F>
Vec<F> plane_through(const QuadricCurveT<F>& C, const F& f, const PointMultiset<F>& m) {
  int total = 0;
  for (const auto& [p, mult] : m) total += mult;
  if (total != 3)
    throw_error(ErrorKind::InvalidArgument, "plane_through: multiplicities must sum to 3");
  if (m.size() == 1) return osculating_plane_at(C, f, m[0].first);
  Mat<F> rows;
  if (m.size() == 2) {
    const auto& P = m[0].second == 2 ? m[0].first : m[1].first;
    const auto& X = m[0].second == 2 ? m[1].first : m[0].first;
    auto N = tangent_space(C, f, P);
    rows = {N[0], N[1], X.x};
  } else {
    rows = {m[0].first.x, m[1].first.x, m[2].first.x};
  }
  auto h = nullspace(f, rows);
  if (h.size() != 1)
    throw_error(ErrorKind::DegenerateConfiguration,
                "plane_through: points do not span a plane");
  return h[0];
}

template <ExactField F>
typename F::Element plane_eval3(const F& f, const Vec<F>& l, const Vec<F>& w) {
  auto acc = f.zero();
  for (int i = 0; i < 3; ++i) acc = f.add(acc, f.mul(l[i], w[i]));
  return acc;
}

// One fourth-intersection attempt: split a pencil member along the line L
// (through two known intersections, or a tangent line), then deflate the
// remaining known root k3 on the residual line.
template <ExactField F>
std::optional<Vec<F>> attempt_split(const F& f, const Mat<F>& A, const Mat<F>& B,
                                    const Vec<F>& line, const Vec<F>& k3) {
  auto gens = nullspace(f, Mat<F>{line});
  if (gens.size() != 2) return std::nullopt;
  const Vec<F>&u = gens[0], &v = gens[1];
  auto gA = restrict_to_line(f, A, u, v);
  auto gB = restrict_to_line(f, B, u, v);
  bool zA = f.is_zero(gA[0]) && f.is_zero(gA[1]) && f.is_zero(gA[2]);
  bool zB = f.is_zero(gB[0]) && f.is_zero(gB[1]) && f.is_zero(gB[2]);
  if (zA && zB) return std::nullopt;  // line inside the base locus

  // Pencil member alpha A + beta B vanishing on L.
  typename F::Element alpha, beta;
  if (zA) {
    alpha = f.one();
    beta = f.zero();
  } else if (zB) {
    alpha = f.zero();
    beta = f.one();
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (!f.eq(f.mul(gA[i], gB[j]), f.mul(gA[j], gB[i]))) return std::nullopt;
    int i0 = 0;
    while (f.is_zero(gB[i0])) ++i0;
    alpha = gB[i0];
    beta = f.neg(gA[i0]);
  }
  Mat<F> Q(3, Vec<F>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      Q[i][j] = f.add(f.mul(alpha, A[i][j]), f.mul(beta, B[i][j]));
  if (mat_is_zero(f, Q)) return std::nullopt;

  // Q = l l' as quadratic forms: Q_ij = (l_i l'_j + l_j l'_i)/2.
  int i0 = 0;
  while (i0 < 3 && f.is_zero(line[i0])) ++i0;
  if (i0 == 3) return std::nullopt;
  Vec<F> lp(3, f.zero());
  lp[i0] = f.div(Q[i0][i0], line[i0]);
  for (int j = 0; j < 3; ++j) {
    if (j == i0) continue;
    // 2 Q[i0][j] = l_{i0} l'_j + l_j l'_{i0}
    lp[j] = f.div(f.sub(f.add(Q[i0][j], Q[i0][j]), f.mul(line[j], lp[i0])), line[i0]);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      auto expect = f.add(f.mul(line[i], lp[j]), f.mul(line[j], lp[i]));
      if (!f.eq(f.add(Q[i][j], Q[i][j]), expect)) return std::nullopt;
    }
  if (vec_is_zero(f, lp)) return std::nullopt;
  if (!f.is_zero(plane_eval3(f, lp, k3))) return std::nullopt;

  // Residual line L' and the conic restricted to it.
  auto gens2 = nullspace(f, Mat<F>{lp});
  if (gens2.size() != 2) return std::nullopt;
  const Vec<F>&u2 = gens2[0], &v2 = gens2[1];
  auto g = restrict_to_line(f, A, u2, v2);
  if (f.is_zero(g[0]) && f.is_zero(g[1]) && f.is_zero(g[2])) g = restrict_to_line(f, B, u2, v2);
  if (f.is_zero(g[0]) && f.is_zero(g[1]) && f.is_zero(g[2])) return std::nullopt;

  // Parameter (s3 : t3) of k3 on L'.
  Mat<F> sys(3, Vec<F>(2));
  for (int i = 0; i < 3; ++i) {
    sys[i][0] = u2[i];
    sys[i][1] = v2[i];
  }
  auto par = solve_linear(f, sys, k3);
  if (!par) return std::nullopt;
  auto s3 = (*par)[0], t3 = (*par)[1];
  if (f.is_zero(s3) && f.is_zero(t3)) return std::nullopt;

  // Deflate: g = (t3 s - s3 t)(c s + d t).
  typename F::Element c, d;
  if (!f.is_zero(t3)) {
    c = f.div(g[0], t3);
    d = f.div(f.add(g[1], f.mul(c, s3)), t3);
    if (!f.eq(f.neg(f.mul(d, s3)), g[2])) return std::nullopt;
  } else {
    d = f.neg(f.div(g[2], s3));
    c = f.neg(f.div(g[1], s3));
    if (!f.is_zero(g[0])) return std::nullopt;
  }
  if (f.is_zero(c) && f.is_zero(d)) return std::nullopt;
  Vec<F> w(3);
  for (int i = 0; i < 3; ++i) w[i] = f.sub(f.mul(d, u2[i]), f.mul(c, v2[i]));
  if (vec_is_zero(f, w)) return std::nullopt;
  return w;
}

}  // namespace qe_detail

template <ExactField F>
ProjPoint<F> fourth_intersection(const QuadricCurveT<F>& C, const F& f,
                                 const std::vector<typename F::Element>& plane,
                                 const PointMultiset<F>& known) {
  using namespace qe_detail;
  if (plane.size() != 4 || vec_is_zero(f, plane))
    throw_error(ErrorKind::InvalidArgument, "fourth_intersection: bad plane");
  int total = 0;
  for (const auto& [p, mult] : known) {
    total += mult;
    if (!quadric_member(C, f, p) || !f.is_zero(plane_eval(f, plane, p.x)))
      throw_error(ErrorKind::DegenerateConfiguration,
                  "fourth_intersection: known point not on the plane section");
  }
  if (total != 3)
    throw_error(ErrorKind::InvalidArgument,
                "fourth_intersection: multiplicities must sum to 3");

  auto basis = nullspace(f, Mat<F>{plane});
  if (basis.size() != 3)
    throw_error(ErrorKind::InvalidArgument, "fourth_intersection: plane is not a plane");
  Mat<F> A = restrict_conic(f, C.qa, basis);
  Mat<F> B = restrict_conic(f, C.qb, basis);
  if (mat_is_zero(f, A) || mat_is_zero(f, B))
    throw_error(ErrorKind::DegenerateConfiguration,
                "fourth_intersection: plane contained in a quadric");

  // Known points in plane coordinates.
  Mat<F> sys(4, Vec<F>(3));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) sys[i][j] = basis[static_cast<std::size_t>(j)][i];
  std::vector<std::pair<Vec<F>, int>> kn;
  for (const auto& [p, mult] : known) {
    auto w = solve_linear(f, sys, p.x);
    if (!w)
      throw_error(ErrorKind::DegenerateConfiguration,
                  "fourth_intersection: point does not lie on the plane");
    kn.push_back({*w, mult});
  }

  // Candidate (L, k3) pairings.
  std::vector<std::pair<Vec<F>, Vec<F>>> candidates;
  auto tangent_candidates = [&](const Vec<F>& at, const Vec<F>& k3) {
    auto ga = conic_gradient(f, A, at);
    if (!vec_is_zero(f, ga)) candidates.push_back({ga, k3});
    auto gb = conic_gradient(f, B, at);
    if (!vec_is_zero(f, gb)) candidates.push_back({gb, k3});
  };
  if (kn.size() == 1) {
    tangent_candidates(kn[0].first, kn[0].first);
  } else if (kn.size() == 2) {
    const auto& dbl = kn[0].second == 2 ? kn[0].first : kn[1].first;
    const auto& single = kn[0].second == 2 ? kn[1].first : kn[0].first;
    tangent_candidates(dbl, single);
    candidates.push_back({cross3(f, dbl, single), dbl});
  } else {
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        int cidx = 3 - a - b;
        auto l = cross3(f, kn[a].first, kn[b].first);
        if (!vec_is_zero(f, l)) candidates.push_back({l, kn[cidx].first});
      }
  }

  for (const auto& [line, k3] : candidates) {
    auto w = attempt_split(f, A, B, line, k3);
    if (!w) continue;
    Vec<F> x(4, f.zero());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j)
        x[i] = f.add(x[i], f.mul((*w)[j], basis[static_cast<std::size_t>(j)][i]));
    if (vec_is_zero(f, x)) continue;
    ProjPoint<F> out{x};
    if (!quadric_member(C, f, out)) continue;
    return canonical(f, out);
  }
  throw_error(ErrorKind::DegenerateConfiguration,
              "fourth_intersection: no pencil split succeeded");
}

template <ExactField F>
OsculationDataT<F> osculation_data(const QuadricCurveT<F>& C, const F& f) {
  auto h = qe_detail::osculating_plane_at(C, f, C.base);
  canonicalize_coords(f, h);
  PointMultiset<F> m{{C.base, 3}};
  auto Oprime = fourth_intersection(C, f, h, m);
  bool flex = proj_eq(f, Oprime, C.base);
  return OsculationDataT<F>{h, Oprime, flex};
}

namespace qe_detail {

template <ExactField F>
PointMultiset<F> merge_points(const F& f, const std::vector<ProjPoint<F>>& pts) {
  PointMultiset<F> m;
  for (const auto& p : pts) {
    bool found = false;
    for (auto& [q, mult] : m) {
      if (proj_eq(f, q, p)) {
        ++mult;
        found = true;
        break;
      }
    }
    if (!found) m.push_back({p, 1});
  }
  return m;
}

}  // namespace qe_detail

template <ExactField F>
ProjPoint<F> ec_neg(const QuadricCurveT<F>& C, const F& f, const ProjPoint<F>& P) {
  if (!quadric_member(C, f, P))
    throw_error(ErrorKind::InvalidArgument, "ec_neg: point not on curve");
  auto osc = osculation_data(C, f);
  auto m = qe_detail::merge_points(f, {P, C.base, osc.osculation_point});
  auto h = qe_detail::plane_through(C, f, m);
  return fourth_intersection(C, f, h, m);
}

template <ExactField F>
ProjPoint<F> ec_add(const QuadricCurveT<F>& C, const F& f, const ProjPoint<F>& P1,
                    const ProjPoint<F>& P2) {
  if (!quadric_member(C, f, P1) || !quadric_member(C, f, P2))
    throw_error(ErrorKind::InvalidArgument, "ec_add: point not on curve");
  auto osc = osculation_data(C, f);
  auto m1 = qe_detail::merge_points(f, {P1, P2, osc.osculation_point});
  auto h1 = qe_detail::plane_through(C, f, m1);
  auto p3p = fourth_intersection(C, f, h1, m1);
  auto m2 = qe_detail::merge_points(f, {C.base, osc.osculation_point, p3p});
  auto h2 = qe_detail::plane_through(C, f, m2);
  return fourth_intersection(C, f, h2, m2);
}

template <ExactField F>
ProjPoint<F> ec_scalar_mul(const QuadricCurveT<F>& C, const F& f, long m,
                           const ProjPoint<F>& P) {
  if (m == 0) return canonical(f, C.base);
  if (m < 0) return ec_neg(C, f, ec_scalar_mul(C, f, -m, P));
  ProjPoint<F> acc = canonical(f, C.base);
  ProjPoint<F> base = P;
  bool acc_is_zero = true;
  while (m > 0) {
    if (m & 1) {
      acc = acc_is_zero ? base : ec_add(C, f, acc, base);
      acc_is_zero = false;
    }
    m >>= 1;
    if (m) base = ec_add(C, f, base, base);
  }
  return canonical(f, acc);
}

template <ExactField F>
std::optional<long> point_order(const QuadricCurveT<F>& C, const F& f,
                                const ProjPoint<F>& P, long bound) {
  if (bound < 1) throw_error(ErrorKind::InvalidArgument, "point_order: bound must be >= 1");
  ProjPoint<F> acc = P;
  for (long m = 1; m <= bound; ++m) {
    if (proj_eq(f, acc, C.base)) return m;
    acc = ec_add(C, f, acc, P);
  }
  return std::nullopt;
}

inline GaloisReport galois_case(const QuadricCurveT<QuadraticField>& C,
                                const QuadraticField& f,
                                const ProjPoint<QuadraticField>& P) {
  if (!quadric_member(C, f, P))
    throw_error(ErrorKind::InvalidArgument, "galois_case: point not on curve");
  ProjPoint<QuadraticField> sigma{{f.conjugate(P.x[0]), f.conjugate(P.x[1]),
                                   f.conjugate(P.x[2]), f.conjugate(P.x[3])}};
  GaloisReport rep;
  rep.sigma_point = sigma;
  if (proj_eq(f, P, sigma)) {
    rep.kind = GaloisCase::Rational;
    rep.signs = {1, 1, 1, 1};
    return rep;
  }
  auto try_pattern = [&](bool reversed) -> std::optional<std::array<int, 4>> {
    for (int mask = 0; mask < 16; ++mask) {
      std::array<int, 4> s;
      std::vector<QuadFieldElem> coords(4);
      for (int i = 0; i < 4; ++i) {
        s[i] = (mask >> i) & 1 ? -1 : 1;
        QuadFieldElem base = reversed ? P.x[3 - i] : P.x[i];
        coords[i] = s[i] == 1 ? base : f.neg(base);
      }
      ProjPoint<QuadraticField> cand{coords};
      if (proj_eq(f, sigma, cand)) return s;
    }
    return std::nullopt;
  };
  auto case2 = try_pattern(false);
  auto case1 = try_pattern(true);
  if (case2) {
    // sigma fixes all x_i^2, so the progression class must be rational.
    auto a = f.mul(P.x[0], P.x[0]);
    auto r = f.sub(f.mul(P.x[1], P.x[1]), a);
    std::vector<QuadFieldElem> cls{a, r};
    canonicalize_coords(f, cls);
    if (!cls[0].is_rational() || !cls[1].is_rational())
      throw_error(ErrorKind::InvariantViolation,
                  "galois_case: Case 2 with an irrational progression class");
    rep.kind = GaloisCase::Case2;
    rep.signs = *case2;
    rep.rational_phi = std::make_pair(cls[0].u, cls[1].u);
    return rep;
  }
  if (case1) {
    rep.kind = GaloisCase::Case1;
    rep.signs = *case1;
    return rep;
  }
  throw_error(ErrorKind::InvariantViolation,
              "galois_case: conjugate matches neither pattern");
}

}  // namespace apsq
