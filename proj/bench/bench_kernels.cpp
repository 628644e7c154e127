// Serial reference vs OpenMP kernel comparison for the hot loops.

#include <benchmark/benchmark.h>

#include "constell/constellation.hpp"
#include "constell/lattice.hpp"
#include "constell/primes.hpp"
#include "constell/quadform.hpp"
#include "constell/sieve.hpp"

using namespace constell;

namespace {

const FieldSpec& sqrt2_field() {
  static FieldSpec F = make_quadratic_field(2);
  return F;
}

const FieldSpec& gauss_field() {
  static FieldSpec F = make_quadratic_field(-1);
  return F;
}

const DomainSpec& sqrt2_domain() {
  static DomainSpec D = make_domain(sqrt2_field());
  return D;
}

void BM_nl_constants_serial(benchmark::State& state) {
  const auto& D = sqrt2_domain();
  for (auto _ : state) {
    auto w = nl_constants_serial(D, double(state.range(0)));
    benchmark::DoNotOptimize(w.c_min);
  }
}
BENCHMARK(BM_nl_constants_serial)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_nl_constants_omp(benchmark::State& state) {
  const auto& D = sqrt2_domain();
  for (auto _ : state) {
    auto w = nl_constants(D, double(state.range(0)));
    benchmark::DoNotOptimize(w.c_min);
  }
}
BENCHMARK(BM_nl_constants_omp)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_prime_enum_serial(benchmark::State& state) {
  const auto& F = gauss_field();
  for (auto _ : state) {
    auto v = enumerate_prime_elements_serial(F, double(state.range(0)));
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_prime_enum_serial)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_prime_enum_omp(benchmark::State& state) {
  const auto& F = gauss_field();
  for (auto _ : state) {
    auto v = enumerate_prime_elements(F, double(state.range(0)));
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_prime_enum_omp)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_prime_rep_serial(benchmark::State& state) {
  QuadForm f{1, 0, 1};
  for (auto _ : state) {
    auto v = prime_rep_search_serial(f, state.range(0), 1);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_prime_rep_serial)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_prime_rep_omp(benchmark::State& state) {
  QuadForm f{1, 0, 1};
  for (auto _ : state) {
    auto v = prime_rep_search(f, state.range(0), 1);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_prime_rep_omp)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_gy_serial(benchmark::State& state) {
  auto P = make_weight_params(20.0, "bump", 4.0);
  for (auto _ : state) {
    auto r = gy_average_rational_serial(P, 1, 1, state.range(0));
    benchmark::DoNotOptimize(r.empirical);
  }
}
BENCHMARK(BM_gy_serial)->Arg(1 << 20)->Arg(1 << 22)->Unit(benchmark::kMillisecond);

void BM_gy_omp(benchmark::State& state) {
  auto P = make_weight_params(20.0, "bump", 4.0);
  for (auto _ : state) {
    auto r = gy_average_rational(P, 1, 1, state.range(0));
    benchmark::DoNotOptimize(r.empirical);
  }
}
BENCHMARK(BM_gy_omp)->Arg(1 << 20)->Arg(1 << 22)->Unit(benchmark::kMillisecond);

std::vector<ZVec> residue_cloud(i64 radius) {
  std::vector<ZVec> pts;
  for (i64 x = -radius; x <= radius; ++x)
    for (i64 y = -radius; y <= radius; ++y)
      if (((x * x + 3 * y) % 7 + 7) % 7 < 3) pts.push_back({x, y});
  return pts;
}

void BM_constellation_serial(benchmark::State& state) {
  auto pts = residue_cloud(state.range(0));
  auto S = standardize(make_shape({{1, 2}}));
  for (auto _ : state) {
    auto v = find_constellations_points_serial(pts, S, 6);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_constellation_serial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_constellation_omp(benchmark::State& state) {
  auto pts = residue_cloud(state.range(0));
  auto S = standardize(make_shape({{1, 2}}));
  for (auto _ : state) {
    auto v = find_constellations_points(pts, S, 6);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_constellation_omp)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_chebotarev_omp(benchmark::State& state) {
  auto F = make_quadratic_field(-5);
  attach_class_number(F);
  for (auto _ : state) {
    auto r = chebotarev_ratio(F, double(state.range(0)));
    benchmark::DoNotOptimize(r.raw_count);
  }
}
BENCHMARK(BM_chebotarev_omp)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_chebotarev_1thread(benchmark::State& state) {
  auto F = make_quadratic_field(-5);
  attach_class_number(F);
  for (auto _ : state) {
    auto r = chebotarev_ratio(F, double(state.range(0)), 1);
    benchmark::DoNotOptimize(r.raw_count);
  }
}
BENCHMARK(BM_chebotarev_1thread)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
