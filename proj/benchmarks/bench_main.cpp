// Microbenchmarks for the counting kernel and the exact group laws.

#include <benchmark/benchmark.h>

#include "apsq/counting.hpp"
#include "apsq/quadric_ec.hpp"
#include "apsq/weierstrass.hpp"

using namespace apsq;

static void BM_residue_table(benchmark::State& state) {
  Fq F = field_make(static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(residue_table(F, 2));
  }
}
BENCHMARK(BM_residue_table)->Arg(1009)->Arg(10007)->Arg(100003);

static void BM_count_fiber(benchmark::State& state) {
  Fq F = field_make(static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_points(4, 2, F).count);
  }
}
BENCHMARK(BM_count_fiber)->Arg(101)->Arg(1009)->Arg(10007);

static void BM_count_brute(benchmark::State& state) {
  Fq F = field_make(static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_points_bruteforce(4, 2, F).count);
  }
}
BENCHMARK(BM_count_brute)->Arg(23)->Arg(53);

static void BM_quadric_add_fp(benchmark::State& state) {
  PrimeField F(10007);
  auto C = QuadricCurveT<PrimeField>::c3(F);
  ProjPoint<PrimeField> P{{F.from_int(-1), F.one(), F.one(), F.one()}};
  ProjPoint<PrimeField> Q{{F.one(), F.from_int(-1), F.one(), F.one()}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ec_add(C, F, P, Q));
  }
}
BENCHMARK(BM_quadric_add_fp);

static void BM_weierstrass_mul(benchmark::State& state) {
  WeierstrassCurve E(0, -2, -6);
  WPoint P(2, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w_mul(E, Int(state.range(0)), P));
  }
}
BENCHMARK(BM_weierstrass_mul)->Arg(8)->Arg(16);

static void BM_two_descent(benchmark::State& state) {
  WeierstrassCurve E(0, -2, -6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_descent_rank_bound(E).rank_upper_bound);
  }
}
BENCHMARK(BM_two_descent);

BENCHMARK_MAIN();
