// Command-line surface. One JSON object per command (CSV for count-sweep),
// deterministic given inputs; elapsed_ms is suppressed by --stable so runs
// can be diffed byte for byte.

#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <functional>
#include <json.hpp>
#include <set>

#include "apsq/counting.hpp"
#include "apsq/progressions.hpp"
#include "apsq/quadric_ec.hpp"
#include "apsq/verify.hpp"
#include "apsq/weierstrass.hpp"

namespace apsq::cli {

namespace {

using nlohmann::ordered_json;

const Int kJsonIntMax = (Int(1) << 53);

ordered_json json_int(const Int& v) {
  if (abs(v) < kJsonIntMax) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

ordered_json json_rat(const Rat& q) {
  if (q.get_den() == 1) return json_int(q.get_num());
  return q.get_str();
}

ordered_json json_qf(const QuadFieldElem& z) { return qf_str(z); }

// ---- coordinate parsing -------------------------------------------------

Rat parse_rational(const std::string& s) {
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw_error(ErrorKind::InvalidArgument, "cannot parse rational: " + s);
  }
}

// Coordinate over Q(sqrt D): sums of terms  r  |  r*sqrt(D)  |  sqrt(D).
QuadFieldElem parse_qf_coord(const std::string& s, const Int& D) {
  Rat u = 0, v = 0;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw_error(ErrorKind::InvalidArgument, "malformed coordinate: " + s);
    }
    first = false;
    std::size_t start = i;
    while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
    std::string term = s.substr(start, i - start);
    if (term.empty()) throw_error(ErrorKind::InvalidArgument, "malformed coordinate: " + s);
    auto sq = term.find("sqrt(");
    if (sq == std::string::npos) {
      u += sign * parse_rational(term);
      continue;
    }
    auto close = term.find(')', sq);
    if (close == std::string::npos)
      throw_error(ErrorKind::InvalidArgument, "malformed sqrt term: " + term);
    Int d(term.substr(sq + 5, close - sq - 5));
    if (d != D)
      throw_error(ErrorKind::InvalidArgument,
                  "sqrt argument does not match the field discriminant D");
    std::string coeff = term.substr(0, sq);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    Rat c = coeff.empty() ? Rat(1) : parse_rational(coeff);
    v += sign * c;
  }
  return QuadFieldElem(D, u, v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return parts;
}

// ---- command context ----------------------------------------------------

struct Ctx {
  std::ostream& out;
  bool stable;
  std::string command;
  ordered_json inputs = ordered_json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(const ordered_json& result) {
    ordered_json env;
    env["command"] = command;
    env["inputs"] = inputs;
    env["result"] = result;
    if (!stable) {
      env["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    }
    out << env.dump(2) << "\n";
  }
};

ordered_json count_result_json(const CountResult& r) {
  ordered_json j;
  j["n"] = r.n;
  j["k"] = static_cast<std::int64_t>(r.k);
  j["p"] = static_cast<std::int64_t>(r.p);
  j["m"] = r.m;
  j["q"] = static_cast<std::int64_t>(r.q);
  j["count"] = json_int(r.count);
  j["method"] = r.method == CountMethod::FiberFormula ? "fiber-formula" : "brute-force";
  return j;
}

ordered_json gonality_json(const GonalityReport& g) {
  ordered_json j;
  j["n"] = g.n;
  j["k"] = static_cast<std::int64_t>(g.k);
  j["lower_bound"] = json_int(g.lower_bound);
  j["witness"] = {{"p", static_cast<std::int64_t>(g.witness.p)},
                  {"m", g.witness.m},
                  {"count", json_int(g.witness.count)}};
  if (g.corollary_bound) j["corollary_bound"] = json_rat(*g.corollary_bound);
  if (g.upper_bound) j["upper_bound"] = json_int(*g.upper_bound);
  j["window_extended"] = g.window_extended;
  j["window_hi"] = static_cast<std::int64_t>(g.window_hi);
  return j;
}

ordered_json wpoint_json(const WPoint& P) {
  if (P.infinity) return "infinity";
  ordered_json j;
  j["x"] = json_rat(P.x);
  j["y"] = json_rat(P.y);
  return j;
}

ordered_json apspec_json(const APSpec& s) {
  return ordered_json{{"a", json_int(s.a)}, {"r", json_int(s.r)}};
}

const char* tag_name(IndexTag t) {
  switch (t) {
    case IndexTag::SquareInQ: return "square-in-Q";
    case IndexTag::DTimesSquare: return "D-times-square";
    case IndexTag::SquareOnlyInK: return "square-only-in-K";
    case IndexTag::NonSquare: return "non-square";
  }
  return "?";
}

WPoint parse_wpoint(const std::string& s) {
  if (s == "inf" || s == "infinity") return WPoint::at_infinity();
  auto parts = split(s, ',');
  if (parts.size() != 2)
    throw_error(ErrorKind::InvalidArgument, "weierstrass point must be 'x,y' or 'infinity'");
  return WPoint(parse_rational(parts[0]), parse_rational(parts[1]));
}

WeierstrassCurve parse_curve_roots(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 3)
    throw_error(ErrorKind::InvalidArgument, "--roots expects 'e1,e2,e3'");
  return WeierstrassCurve(Int(parts[0]), Int(parts[1]), Int(parts[2]));
}

// ---- ec subcommand helpers ----------------------------------------------

template <ExactField F>
QuadricCurveT<F> pick_curve(const F& f, const std::string& name) {
  if (name == "C3") return QuadricCurveT<F>::c3(f);
  if (name == "F1") return QuadricCurveT<F>::f1(f);
  if (name == "F2") return QuadricCurveT<F>::f2(f);
  throw_error(ErrorKind::InvalidArgument, "unknown curve (use C3, F1 or F2)");
}

template <ExactField F>
ProjPoint<F> parse_point4(const F& f, const std::string& s,
                          const std::function<typename F::Element(const std::string&)>& coord) {
  auto parts = split(s, ':');
  if (parts.size() != 4)
    throw_error(ErrorKind::InvalidArgument, "point must have 4 coordinates 'x0:x1:x2:x3'");
  std::vector<typename F::Element> c;
  for (const auto& p : parts) c.push_back(coord(p));
  return make_point(f, std::move(c));
}

struct EcArgs {
  std::string curve = "C3";
  std::string op;
  std::string P, Q;
  long scalar = 2;
  long bound = 16;
  Int D = 0;
  std::uint64_t p = 0;
};

template <ExactField F>
ordered_json ec_dispatch(const F& f, const EcArgs& a,
                         const std::function<typename F::Element(const std::string&)>& coord,
                         const std::function<ordered_json(const ProjPoint<F>&)>& point_json) {
  auto C = pick_curve(f, a.curve);
  ordered_json res;
  if (a.op == "osculation") {
    auto osc = osculation_data(C, f);
    ordered_json plane = ordered_json::array();
    for (const auto& h : osc.plane) plane.push_back(f.str(h));
    res["plane"] = plane;
    res["osculation_point"] = point_json(osc.osculation_point);
    res["flex"] = osc.flex;
    return res;
  }
  if (a.op == "member") {
    res["member"] = quadric_member(C, f, parse_point4(f, a.P, coord));
    return res;
  }
  auto P = parse_point4(f, a.P, coord);
  if (a.op == "neg") {
    res["point"] = point_json(ec_neg(C, f, P));
  } else if (a.op == "add") {
    auto Q = parse_point4(f, a.Q, coord);
    res["point"] = point_json(ec_add(C, f, P, Q));
  } else if (a.op == "mul") {
    res["point"] = point_json(ec_scalar_mul(C, f, a.scalar, P));
  } else if (a.op == "order") {
    auto ord = point_order(C, f, P, a.bound);
    res["order"] = ord ? ordered_json(*ord) : ordered_json(nullptr);
  } else {
    throw_error(ErrorKind::InvalidArgument, "unknown --op for ec");
  }
  return res;
}

// ---- subcommand bodies ----------------------------------------------------

void cmd_count(Ctx& ctx, long n, unsigned long k, std::uint64_t p, int m, bool brute) {
  Fq F = field_make(p, m);
  CountResult r = brute ? count_points_bruteforce(n, k, F) : count_points(n, k, F);
  ctx.emit(count_result_json(r));
}

void cmd_count_sweep(Ctx& ctx, const std::vector<long>& ns, const std::vector<unsigned long>& ks,
                     const std::vector<std::uint64_t>& ps, const std::vector<int>& ms) {
  ctx.out << "n,k,p,m,count,genus,hw_ok\n";
  for (long n : ns)
    for (unsigned long k : ks)
      for (std::uint64_t p : ps)
        for (int m : ms) {
          if (p <= static_cast<std::uint64_t>(n) || k % p == 0) continue;
          Fq F = field_make(p, m);
          Int count = count_points(n, k, F).count;
          ctx.out << n << "," << k << "," << p << "," << m << "," << count.get_str() << ",";
          if (k == 2) {
            ctx.out << genus(n).get_str() << ","
                    << (m == 1 ? (hasse_weil_check(n, p) ? "1" : "0") : "");
          } else {
            ctx.out << ",";
          }
          ctx.out << "\n";
        }
}

void cmd_smooth_check(Ctx& ctx, long n, std::uint64_t p) {
  PrimeField F(p);
  CurveFamily C(n, 2);
  auto pts = enumerate_points(n, 2, F.fq());
  bool all_smooth = true;
  long minors = 0;
  for (const auto& pt : pts) {
    auto jr = jacobian_rank_check(C, F, pt);
    all_smooth = all_smooth && jr.smooth;
    for (long j1 = 0; j1 <= n; ++j1)
      for (long j2 = j1 + 1; j2 <= n; ++j2) {
        (void)jacobian_minor_closed_form(C, F, pt, j1, j2);  // throws on mismatch
        ++minors;
      }
  }
  ordered_json res;
  res["points"] = static_cast<std::int64_t>(pts.size());
  res["all_smooth"] = all_smooth;
  res["rank_expected"] = n - 1;
  res["minors_checked"] = minors;
  ctx.emit(res);
}

void cmd_verify_paper(Ctx& ctx, bool& failed) {
  auto results = run_acceptance();
  ordered_json rows = ordered_json::array();
  bool all = true;
  for (const auto& r : results) {
    rows.push_back(ordered_json{
        {"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  ordered_json res;
  res["criteria"] = rows;
  res["all_passed"] = all;
  ctx.emit(res);
  failed = !all;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"squares in arithmetic progression over number fields: exact toolkit"};
  app.require_subcommand(1);
  bool stable = false;
  unsigned threads = 0;
  app.add_flag("--stable", stable, "omit elapsed_ms so output is byte-reproducible");
  app.add_option("--threads", threads, "worker threads for counting loops");

  // count
  long n = 3;
  unsigned long k = 2;
  std::uint64_t p = 5;
  int m = 1;
  bool brute = false;
  auto* count = app.add_subcommand("count", "point count of C_{n,k} over F_{p^m}");
  count->add_option("--n", n)->required();
  count->add_option("--k", k);
  count->add_option("--p", p)->required();
  count->add_option("--m", m);
  count->add_flag("--brute-force", brute, "use the projective enumeration oracle");

  // count-sweep
  std::vector<long> sweep_n;
  std::vector<unsigned long> sweep_k{2};
  std::vector<std::uint64_t> sweep_p;
  std::vector<int> sweep_m{1};
  auto* sweep = app.add_subcommand("count-sweep", "CSV table of counts over a grid");
  sweep->add_option("--n", sweep_n)->required();
  sweep->add_option("--k", sweep_k);
  sweep->add_option("--p", sweep_p)->required();
  sweep->add_option("--m", sweep_m);

  // gonality
  long gn = 5;
  unsigned long gk = 2;
  int m_max = 1;
  auto* gon = app.add_subcommand("gonality", "gonality lower bound from reduction counts");
  gon->add_option("--n", gn)->required();
  gon->add_option("--k", gk);
  gon->add_option("--m-max", m_max);

  // frey
  long fd = 1;
  unsigned long fk = 2;
  int fm_max = 1;
  auto* frey = app.add_subcommand("frey", "finiteness thresholds from the gonality bounds");
  frey->add_option("--d", fd)->required();
  frey->add_option("--k", fk);
  frey->add_option("--m-max", fm_max);

  // genus
  long genus_n = 3;
  auto* gen = app.add_subcommand("genus", "genus of C_n");
  gen->add_option("--n", genus_n)->required();

  // smooth-check
  long sc_n = 3;
  std::uint64_t sc_p = 5;
  auto* smooth = app.add_subcommand("smooth-check",
                                    "Jacobian ranks and minor identities on all points");
  smooth->add_option("--n", sc_n)->required();
  smooth->add_option("--p", sc_p)->required();

  // ec
  EcArgs ec;
  auto* ecc = app.add_subcommand("ec", "group law on C3/F1/F2 as quadric intersections");
  ecc->add_option("--curve", ec.curve, "C3, F1 or F2");
  ecc->add_option("--op", ec.op, "osculation|neg|add|mul|order|galois|member")->required();
  ecc->add_option("--P", ec.P, "point x0:x1:x2:x3");
  ecc->add_option("--Q", ec.Q, "second point for add");
  ecc->add_option("--scalar", ec.scalar, "multiplier for mul");
  ecc->add_option("--bound", ec.bound, "order search bound");
  std::string ec_d;
  ecc->add_option("--D", ec_d, "work over Q(sqrt D)");
  ecc->add_option("--p", ec.p, "work over F_p");

  // weierstrass
  std::string w_roots, w_op = "j", w_P, w_Q;
  std::uint64_t w_p = 5;
  long w_H = 10, w_scalar = 2;
  auto* wei = app.add_subcommand("weierstrass", "y^2 = (x-e1)(x-e2)(x-e3) toolkit");
  wei->add_option("--roots", w_roots, "e1,e2,e3")->required();
  wei->add_option("--op", w_op, "j|count|add|mul|search");
  wei->add_option("--p", w_p);
  wei->add_option("--H", w_H);
  wei->add_option("--P", w_P, "point 'x,y' or 'infinity'");
  wei->add_option("--Q", w_Q);
  wei->add_option("--scalar", w_scalar);

  // descent / torsion
  std::string d_roots;
  auto* desc = app.add_subcommand("descent", "full 2-descent Selmer set and rank bound");
  desc->add_option("--roots", d_roots)->required();
  std::string t_roots;
  auto* tors = app.add_subcommand("torsion", "torsion subgroup");
  tors->add_option("--roots", t_roots)->required();

  // search-run
  std::string sA_s = "100", sR_s = "100", sD_s = "1";
  auto* srun = app.add_subcommand("search-run", "max square run over coprime progressions");
  srun->add_option("--A", sA_s, "bound on |a|");
  srun->add_option("--R", sR_s, "bound on r");
  srun->add_option("--D", sD_s, "field discriminant (1 = Q)");

  // five-square-fields
  long fsf_bound = 10;
  auto* fsf = app.add_subcommand("five-square-fields",
                                 "quadratic fields with five squares in progression");
  fsf->add_option("--bound", fsf_bound);

  // six-square-check
  std::string ss_D = "2", ss_A = "1000", ss_R = "1000";
  auto* ss = app.add_subcommand("six-square-check", "search for six squares in progression");
  ss->add_option("--D", ss_D)->required();
  ss->add_option("--A", ss_A);
  ss->add_option("--R", ss_R);

  // classify
  std::string cl_a = "49", cl_r = "120", cl_D = "409";
  long cl_len = 6;
  auto* cls = app.add_subcommand("classify", "per-index square classification over Q(sqrt D)");
  cls->add_option("--a", cl_a)->required();
  cls->add_option("--r", cl_r)->required();
  cls->add_option("--D", cl_D)->required();
  cls->add_option("--length", cl_len);

  // conic
  std::vector<std::string> conic_coeffs;
  auto* con = app.add_subcommand("conic", "rational solvability of a X^2 + b Y^2 + c Z^2 = 0");
  con->add_option("coeffs", conic_coeffs, "a b c")->expected(3);

  // qf-is-square
  std::string qf_D = "13", qf_u = "0", qf_v = "0";
  auto* qfs = app.add_subcommand("qf-is-square", "square test in Q(sqrt D)");
  qfs->add_option("--D", qf_D)->required();
  qfs->add_option("--u", qf_u)->required();
  qfs->add_option("--v", qf_v);

  auto* verify = app.add_subcommand("verify-paper", "run the full acceptance suite");
  (void)verify;

  // Let --stable / --threads appear after the subcommand name too.
  for (auto* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    err << app.help() << "\n" << e.what() << "\n";
    return 2;
  }

  if (threads) set_thread_count(threads);

  try {
    Ctx ctx{out, stable, app.get_subcommands().front()->get_name()};
    for (const auto* opt : app.get_subcommands().front()->get_options()) {
      if (!opt->count() || opt->get_name().empty()) continue;
      const auto& results = opt->results();
      std::string joined;
      for (const auto& r : results) {
        if (!joined.empty()) joined += " ";
        joined += r;
      }
      ctx.inputs[opt->get_name()] = joined;
    }

    if (count->parsed()) {
      cmd_count(ctx, n, k, p, m, brute);
    } else if (sweep->parsed()) {
      cmd_count_sweep(ctx, sweep_n, sweep_k, sweep_p, sweep_m);
    } else if (gon->parsed()) {
      ctx.emit(gonality_json(gonality_lower_bound(gn, gk, m_max)));
    } else if (frey->parsed()) {
      auto rep = frey_threshold(fd, fk, fm_max);
      ordered_json res;
      res["d"] = rep.d;
      res["k"] = static_cast<std::int64_t>(rep.k);
      res["computed_n"] = rep.computed_n;
      res["computed_bound"] = json_int(rep.computed_report.lower_bound);
      res["closed_form_n"] =
          rep.closed_form_n ? ordered_json(*rep.closed_form_n) : ordered_json(nullptr);
      ctx.emit(res);
    } else if (gen->parsed()) {
      ctx.emit(ordered_json{{"genus", json_int(genus(genus_n))}});
    } else if (smooth->parsed()) {
      cmd_smooth_check(ctx, sc_n, sc_p);
    } else if (ecc->parsed()) {
      if (!ec_d.empty()) {
        QuadraticField f((Int(ec_d)));
        auto coord = [&](const std::string& s) { return parse_qf_coord(s, f.D()); };
        if (ec.op == "galois") {
          auto C = pick_curve(f, ec.curve);
          auto P = parse_point4<QuadraticField>(f, ec.P, coord);
          auto rep = galois_case(C, f, P);
          ordered_json res;
          res["case"] = rep.kind == GaloisCase::Case1   ? "Case1"
                        : rep.kind == GaloisCase::Case2 ? "Case2"
                                                         : "Rational";
          res["sigma"] = point_str(f, rep.sigma_point);
          if (rep.rational_phi)
            res["phi"] = ordered_json::array(
                {json_rat(rep.rational_phi->first), json_rat(rep.rational_phi->second)});
          ctx.emit(res);
        } else {
          auto pj = [&](const ProjPoint<QuadraticField>& P) {
            return ordered_json(point_str(f, prettify(f, P)));
          };
          ctx.emit(ec_dispatch<QuadraticField>(f, ec, coord, pj));
        }
      } else if (ec.p) {
        PrimeField f(ec.p);
        auto coord = [&](const std::string& s) { return f.from_int(std::stol(s)); };
        auto pj = [&](const ProjPoint<PrimeField>& P) {
          return ordered_json(point_str(f, canonical(f, P)));
        };
        ctx.emit(ec_dispatch<PrimeField>(f, ec, coord, pj));
      } else {
        RationalField f;
        auto coord = [&](const std::string& s) { return parse_rational(s); };
        auto pj = [&](const ProjPoint<RationalField>& P) {
          return ordered_json(point_str(f, canonical(f, P)));
        };
        ctx.emit(ec_dispatch<RationalField>(f, ec, coord, pj));
      }
    } else if (wei->parsed()) {
      WeierstrassCurve E = parse_curve_roots(w_roots);
      ordered_json res;
      if (w_op == "j") {
        res["j"] = json_rat(j_invariant(E));
      } else if (w_op == "count") {
        res["count"] = json_int(count_mod_p(E, Int(static_cast<unsigned long>(w_p))));
      } else if (w_op == "add") {
        res["point"] = wpoint_json(w_add(E, parse_wpoint(w_P), parse_wpoint(w_Q)));
      } else if (w_op == "mul") {
        res["point"] = wpoint_json(w_mul(E, Int(w_scalar), parse_wpoint(w_P)));
      } else if (w_op == "search") {
        ordered_json pts = ordered_json::array();
        for (const auto& P : naive_point_search(E, Int(w_H))) pts.push_back(wpoint_json(P));
        res["points"] = pts;
      } else {
        throw_error(ErrorKind::InvalidArgument, "unknown --op for weierstrass");
      }
      ctx.emit(res);
    } else if (desc->parsed()) {
      auto rep = two_descent_rank_bound(parse_curve_roots(d_roots));
      ordered_json sel = ordered_json::array();
      for (const auto& [d1, d2] : rep.selmer_pairs)
        sel.push_back(ordered_json::array({json_int(d1), json_int(d2)}));
      ordered_json img = ordered_json::array();
      for (const auto& [d1, d2] : rep.image_of_known_points)
        img.push_back(ordered_json::array({json_int(d1), json_int(d2)}));
      ordered_json res;
      res["selmer_pairs"] = sel;
      res["rank_upper_bound"] = rep.rank_upper_bound;
      res["image_of_known_points"] = img;
      ctx.emit(res);
    } else if (tors->parsed()) {
      auto rep = torsion_subgroup(parse_curve_roots(t_roots));
      ordered_json pts = ordered_json::array();
      for (const auto& P : rep.points) pts.push_back(wpoint_json(P));
      ordered_json res;
      res["order"] = json_int(rep.order);
      res["structure"] = ordered_json::array(
          {json_int(rep.structure.first), json_int(rep.structure.second)});
      res["points"] = pts;
      ctx.emit(res);
    } else if (srun->parsed()) {
      auto rep = max_square_run_search(Int(sA_s), Int(sR_s), Int(sD_s));
      ordered_json ws = ordered_json::array();
      for (const auto& w : rep.witnesses) ws.push_back(apspec_json(w));
      ctx.emit(ordered_json{{"best", rep.best}, {"witnesses", ws}});
    } else if (fsf->parsed()) {
      auto rows = five_square_field_generator(fsf_bound);
      ordered_json jrows = ordered_json::array();
      std::set<Int> fields;
      for (const auto& r : rows) {
        ordered_json terms = ordered_json::array();
        for (const auto& t : r.terms) terms.push_back(json_int(t));
        jrows.push_back(ordered_json{{"m", json_int(r.m)},
                                     {"n", json_int(r.n)},
                                     {"terms", terms},
                                     {"spec", apspec_json(r.spec)},
                                     {"D", json_int(r.D)}});
        fields.insert(r.D);
      }
      ordered_json jf = ordered_json::array();
      for (const auto& d : fields) jf.push_back(json_int(d));
      ctx.emit(ordered_json{{"rows", jrows}, {"fields", jf}});
    } else if (ss->parsed()) {
      auto w = six_square_witness_search(Int(ss_D), Int(ss_A), Int(ss_R));
      ordered_json res;
      res["found"] = w.has_value();
      if (w) res["witness"] = apspec_json(*w);
      ctx.emit(res);
    } else if (cls->parsed()) {
      auto rep = classify_ap_over_quadratic(APSpec(Int(cl_a), Int(cl_r)), Int(cl_D), cl_len);
      ordered_json tags = ordered_json::array();
      for (auto t : rep.tags) tags.push_back(tag_name(t));
      ordered_json res;
      res["spec"] = apspec_json(rep.spec);
      res["D"] = json_int(rep.D);
      res["tags"] = tags;
      res["run_length"] = rep.run_length;
      if (rep.constraint) {
        ordered_json c;
        c["two_index_conflict"] = rep.constraint->two_index_conflict;
        if (rep.constraint->conic)
          c["conic"] = ordered_json::array({json_int(rep.constraint->conic->a),
                                            json_int(rep.constraint->conic->b),
                                            json_int(rep.constraint->conic->c)});
        c["conic_solvable"] = rep.constraint->conic_solvable;
        c["description"] = rep.constraint->description;
        res["constraint"] = c;
      }
      ctx.emit(res);
    } else if (con->parsed()) {
      ConicForm form{Int(conic_coeffs[0]), Int(conic_coeffs[1]), Int(conic_coeffs[2])};
      auto dec = conic_has_rational_point(form);
      ordered_json res;
      res["solvable"] = dec.solvable;
      if (dec.witness) {
        res["witness"] = ordered_json::array({json_int((*dec.witness)[0]),
                                              json_int((*dec.witness)[1]),
                                              json_int((*dec.witness)[2])});
      } else if (dec.solvable) {
        res["witness"] = nullptr;  // solvable by symbols, bound exceeded
      }
      ctx.emit(res);
    } else if (qfs->parsed()) {
      QuadFieldElem z(Int(qf_D), parse_rational(qf_u), parse_rational(qf_v));
      auto root = qf_is_square(z);
      ordered_json res;
      res["square"] = root.has_value();
      if (root) res["root"] = json_qf(*root);
      ctx.emit(res);
    } else if (verify->parsed()) {
      bool failed = false;
      cmd_verify_paper(ctx, failed);
      if (failed) return 3;
    }
  } catch (const Error& e) {
    ordered_json diag;
    diag["error"] = error_kind_name(e.kind());
    diag["message"] = e.what();
    err << diag.dump(2) << "\n";
    switch (e.kind()) {
      case ErrorKind::ResourceLimit: return 4;
      case ErrorKind::InvalidArgument: return 2;
      default: return 3;
    }
  } catch (const std::exception& e) {
    err << "{\"error\": \"internal\", \"message\": \"" << e.what() << "\"}\n";
    return 3;
  }
  return 0;
}

}  // namespace apsq::cli
