#include <doctest.h>

#include <random>

#include "nilpotent/bounded_extgcd.hpp"
#include "nilpotent/errors.hpp"
#include "oracles.hpp"

using namespace nilpotent;

TEST_CASE("gcd_vector") {
  CHECK(gcd_vector({6, 10, 15}) == 1);
  CHECK(gcd_vector({}) == 0);
  CHECK(gcd_vector({0, 0}) == 0);
  CHECK(gcd_vector({-4, 6}) == 2);
}

TEST_CASE("pair gcd fixed values") {
  PairGcd p = extgcd_pair_bounded(4, 6);
  CHECK(p.g == 2);
  CHECK(p.x == -1);
  CHECK(p.y == 1);

  p = extgcd_pair_bounded(0, 0);
  CHECK(p.g == 0);
  CHECK(p.x == 0);
  CHECK(p.y == 0);

  p = extgcd_pair_bounded(5, 0);
  CHECK(p.g == 5);
  CHECK(p.x == 1);
  CHECK(p.y == 0);
}

TEST_CASE("pair gcd matches bounded brute force") {
  for (int a = -40; a <= 40; ++a) {
    for (int b = -40; b <= 40; ++b) {
      PairGcd p = extgcd_pair_bounded(a, b);
      oracle::PairSearch q = oracle::bounded_pair_search(a, b);
      REQUIRE(p.g == q.g);
      REQUIRE(p.x == q.x);
      REQUIRE(p.y == q.y);
    }
  }
}

TEST_CASE("bounded extgcd: (6,10,15) chain") {
  BoundedGcd r = extgcd_bounded({6, 10, 15});
  CHECK(r.g == 1);
  CHECK(r.trace.d == IntVector{0, 6, 2, 1});
  CHECK(r.trace.yz[1] == std::pair<Int, Int>(2, -1));
  CHECK(r.trace.yz[2] == std::pair<Int, Int>(-7, 1));
  CHECK(r.trace.x_raw == IntVector{-14, 7, 1});
  CHECK(6 * r.x[0] + 10 * r.x[1] + 15 * r.x[2] == 1);
  for (const Int& v : r.x) CHECK(abs(v) <= 4 * 225);
  CHECK(check_trace(r.trace).empty());
}

TEST_CASE("bounded extgcd: single and repeated inputs") {
  BoundedGcd r = extgcd_bounded({7});
  CHECK(r.g == 7);
  CHECK(r.x == IntVector{1});

  r = extgcd_bounded({5, 5});
  CHECK(r.g == 5);
  CHECK(r.x == IntVector{1, 0});
  CHECK(r.trace.d == IntVector{0, 1, 1});
}

TEST_CASE("bounded extgcd: zeros and signs") {
  BoundedGcd r = extgcd_bounded({0, 0, 0});
  CHECK(r.g == 0);
  CHECK(r.x == IntVector{0, 0, 0});
  CHECK(r.trace.degenerate);

  r = extgcd_bounded({0, -4, 6, 0});
  CHECK(r.g == 2);
  CHECK(r.x[0] == 0);
  CHECK(r.x[3] == 0);
  CHECK(-4 * r.x[1] + 6 * r.x[2] == 2);
}

TEST_CASE("reduce_coefficients") {
  SUBCASE("no-op when already small") {
    IntVector x = reduce_coefficients({2, 3}, {-1, 1}, 3);
    CHECK(x == IntVector{-1, 1});
  }
  SUBCASE("(6,10,15) from the raw chain") {
    BoundedCombinationTrace t;
    IntVector x = reduce_coefficients({6, 10, 15}, {-14, 7, 1}, 15, t);
    CHECK(6 * x[0] + 10 * x[1] + 15 * x[2] == 1);
    for (const Int& v : x) CHECK(abs(v) <= 900);
  }
  SUBCASE("a large raw solution is pulled into the bound") {
    IntVector a{3, 5};
    IntVector x{2 + 5 * 1000, -1 - 3 * 1000};
    BoundedCombinationTrace t;
    IntVector y = reduce_coefficients(a, x, 5, t);
    CHECK(3 * y[0] + 5 * y[1] == 1);
    for (const Int& v : y) CHECK(abs(v) <= 75);
    CHECK(t.P.back() == t.N.back());
  }
  SUBCASE("precondition violations") {
    CHECK_THROWS_AS(reduce_coefficients({2, 3}, {1, 1}, 3), InputError);
    CHECK_THROWS_AS(reduce_coefficients({0, 1}, {0, 1}, 1), InputError);
    CHECK_THROWS_AS(reduce_coefficients({2, 3}, {-1, 1}, 4), InputError);
  }
}

TEST_CASE("bounded extgcd random property") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t n = 1 + rng() % 32;
    IntVector a(n);
    for (auto& v : a) v = static_cast<long>(rng() % 1001) - 500;
    if (rng() % 4 == 0) a[rng() % n] = 0;
    BoundedGcd r = extgcd_bounded(a);
    Int sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += r.x[i] * a[i];
    REQUIRE(sum == r.g);
    REQUIRE(r.g == gcd_vector(a));
    REQUIRE(check_trace(r.trace) == "");
    if (sgn(r.g) != 0) {
      Int bound = Int(n + 1) * r.trace.A * r.trace.A;
      for (const Int& v : r.x) REQUIRE(abs(v) <= bound);
    }
  }
}
