#include "doctest.h"

#include <algorithm>
#include <set>

#include "constell/constellation.hpp"
#include "constell/primes.hpp"

using namespace constell;

TEST_SUITE_BEGIN("constellation");

TEST_CASE("shapes and standardization") {
  auto S = make_shape({{-1}, {0}, {1}});
  CHECK(S.standard);
  CHECK(S.r() == 2);
  CHECK(standardize(S).points == S.points);

  auto S1 = standardize(make_shape({{1, 0}}));
  std::vector<ZVec> expect{{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}};
  CHECK(S1.points == expect);

  auto S2 = standardize(make_shape({{2}}));
  std::vector<ZVec> expect2{{-2}, {-1}, {0}, {1}, {2}};
  CHECK(S2.points == expect2);

  CHECK_THROWS_AS(make_shape({}), domain_error);
  CHECK_THROWS_AS(make_shape({{1, 2}, {3}}), domain_error);
}

TEST_CASE("shape files") {
  auto S = parse_shape_text("# progression of length 3\n0\n1\n2\n");
  CHECK(S.points.size() == 3);
  CHECK_FALSE(S.standard);
  CHECK_THROWS_WITH_AS(parse_shape_text("0 0\n1 x\n"),
                       doctest::Contains("line 2"), domain_error);
  CHECK_THROWS_AS(parse_shape_text("# only comments\n"), domain_error);
}

TEST_CASE("associates") {
  auto gi = make_quadratic_field(-1);
  CHECK(are_associates(gi.quad(1, 1), gi.quad(-1, 1)));
  CHECK_FALSE(are_associates(gi.quad(1, 1), gi.quad(1, 2)));
  auto f2 = make_quadratic_field(2);
  CHECK(are_associates(f2.one(), f2.quad(1, 1)));  // 1+sqrt2 is a unit
  CHECK_THROWS_AS(are_associates(gi.zero(), gi.one()), domain_error);
}

TEST_CASE("find constellations in the rational primes") {
  auto S = make_shape({{0}, {1}, {2}});
  std::vector<ZVec> A{{2}, {3}, {5}, {7}};
  auto found = find_constellations_points(A, S, 3);
  REQUIRE(found.size() == 1);
  CHECK(found[0].base == ZVec{3});
  CHECK(found[0].k == 2);  // {3, 5, 7}
}

TEST_CASE("find constellations in Gaussian primes") {
  auto gi = make_quadratic_field(-1);
  auto primes = enumerate_prime_elements(gi, 10.0);
  auto S = make_shape({{0, 0}, {1, 0}, {0, 1}});  // {0, 1, i}
  auto found = find_constellations(gi, primes, S, 5, false);
  bool witnessed = false;
  for (auto& c : found)
    if (c.base == ZVec{2, 1} && c.k == 2) witnessed = true;
  CHECK(witnessed);  // {2+i, 4+i, 2+3i}: norms 5, 17, 13

  auto counts = count_constellations(gi, primes, S, 5);
  CHECK(counts.n_s >= 1);
  CHECK(counts.n_s_sharp <= counts.n_s);
}

TEST_CASE("shape {0} returns every base") {
  auto S = make_shape({{0}});
  std::vector<ZVec> A{{3}, {5}};
  auto found = find_constellations_points(A, S, 1);
  CHECK(found.size() == 2);
}

TEST_CASE("deterministic order and parallel agreement") {
  std::vector<ZVec> A;
  for (i64 x = -20; x <= 20; ++x)
    for (i64 y = -20; y <= 20; ++y)
      if ((x * x + 3 * y) % 5 == 0) A.push_back({x, y});
  auto S = standardize(make_shape({{1, 2}}));
  auto ser = find_constellations_points_serial(A, S, 4);
  auto par = find_constellations_points(A, S, 4, false, 4);
  REQUIRE(ser.size() == par.size());
  for (size_t i = 0; i < ser.size(); ++i) {
    CHECK(ser[i].base == par[i].base);
    CHECK(ser[i].k == par[i].k);
  }
  for (size_t i = 1; i < ser.size(); ++i) {
    CHECK((ser[i - 1].k < ser[i].k ||
           (ser[i - 1].k == ser[i].k && ser[i - 1].base < ser[i].base)));
  }
}

TEST_CASE("translation covariance") {
  std::vector<ZVec> A{{0, 0}, {2, 1}, {4, 2}, {1, 5}, {3, 6}, {5, 7}};
  auto S = make_shape({{0, 0}, {2, 1}});
  ZVec gamma{7, -3};
  std::vector<ZVec> shifted;
  for (auto& p : A) shifted.push_back({p[0] + gamma[0], p[1] + gamma[1]});
  auto base_found = find_constellations_points(A, S, 3);
  auto shift_found = find_constellations_points(shifted, S, 3);
  REQUIRE(base_found.size() == shift_found.size());
  for (size_t i = 0; i < base_found.size(); ++i) {
    CHECK(shift_found[i].k == base_found[i].k);
    CHECK(shift_found[i].base[0] == base_found[i].base[0] + gamma[0]);
    CHECK(shift_found[i].base[1] == base_found[i].base[1] + gamma[1]);
  }
}

// Independent distinct-set oracle: direct scan over all (base, k) in range,
// membership by linear search, sets as sorted unique point lists.
static i64 distinct_sets_oracle(const std::vector<ZVec>& A, const Shape& S, i64 k_max) {
  std::set<std::vector<ZVec>> sets;
  i64 lo = INT64_MAX, hi = INT64_MIN;
  for (auto& p : A)
    for (i64 v : p) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  i64 span = 0;
  for (auto& s : S.points)
    for (i64 v : s) span = std::max(span, std::abs(v));
  int dim = S.dim;
  std::vector<i64> base(dim, lo - k_max * span);
  while (true) {
    for (i64 k = 1; k <= k_max; ++k) {
      std::vector<ZVec> realized;
      bool ok = true;
      for (auto& s : S.points) {
        ZVec pt(dim);
        for (int i = 0; i < dim; ++i) pt[i] = base[i] + k * s[i];
        if (std::find(A.begin(), A.end(), pt) == A.end()) {
          ok = false;
          break;
        }
        realized.push_back(pt);
      }
      if (ok) {
        std::sort(realized.begin(), realized.end());
        realized.erase(std::unique(realized.begin(), realized.end()), realized.end());
        sets.insert(realized);
      }
    }
    int i = dim - 1;
    while (i >= 0 && base[i] == hi + k_max * span) base[i--] = lo - k_max * span;
    if (i < 0) break;
    ++base[i];
  }
  return i64(sets.size());
}

TEST_CASE("distinct-set counting against the brute-force oracle") {
  auto gi = make_quadratic_field(-1);
  std::vector<AlgInt> A;
  for (i64 x = -3; x <= 3; ++x)
    for (i64 y = -3; y <= 3; ++y)
      if ((x + 2 * y) % 3 == 0) A.push_back(gi.quad(x, y));
  std::vector<ZVec> pts;
  for (auto& a : A) pts.push_back(a.coords);
  auto S = make_shape({{0, 0}, {1, 1}, {-1, -1}});
  auto counts = count_constellations(gi, A, S, 2);
  CHECK(counts.n_s == distinct_sets_oracle(pts, S, 2));
}

TEST_CASE("N_S equals N_S-sharp inside a fundamental domain") {
  auto gi = make_quadratic_field(-1);
  auto D = make_domain(gi);
  auto primes = enumerate_prime_elements(gi, 20.0, &D);
  auto S = make_shape({{0, 0}, {1, 0}, {0, 1}});
  auto counts = count_constellations(gi, primes, S, 4);
  CHECK(counts.n_s == counts.n_s_sharp);
  CHECK(counts.n_s >= 1);
}

TEST_SUITE_END();
