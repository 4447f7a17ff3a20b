#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "nilpotent/errors.hpp"
#include "nilpotent/group_arith.hpp"
#include "oracles.hpp"

using namespace nilpotent;

namespace {

ExpWord random_word(std::mt19937_64& rng, std::size_t letters, std::size_t max_len, long spread) {
  ExpWord w;
  std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    w.factors.push_back({rng() % letters, Int(static_cast<long>(rng() % (2 * spread + 1)) - spread)});
  }
  return w;
}

IntVector mod_each(IntVector v, long q) {
  for (Int& x : v) x = floor_mod(x, Int(q));
  return v;
}

}  // namespace

TEST_CASE("normal_form examples") {
  auto F12 = FreeNilpotentGroup::get(1, 2);
  auto F22 = FreeNilpotentGroup::get(2, 2);
  QuotientPresentation Z2Z = make_quotient_presentation(F12, {{2, 0}});
  QuotientPresentation H(F22);

  CHECK(normal_form(H, ExpWord{}).coords == IntVector{0, 0, 0});
  CHECK(normal_form(Z2Z, ExpWord{{{0, 5}, {1, -1}}}).coords == IntVector{1, -1});
  CHECK(normal_form(H, ExpWord{{{0, 1024}, {1, 1}, {0, -1024}}}).coords == IntVector{0, 1, -1024});
  CHECK_THROWS_AS(normal_form(H, ExpWord{{{3, 1}}}), InputError);
}

TEST_CASE("word_problem examples") {
  auto F12 = FreeNilpotentGroup::get(1, 2);
  auto F22 = FreeNilpotentGroup::get(2, 2);
  QuotientPresentation Z2Z = make_quotient_presentation(F12, {{2, 0}});
  QuotientPresentation H(F22);
  CHECK(word_problem(H, ExpWord{}));
  CHECK(word_problem(Z2Z, ExpWord{{{0, 2}}}));
  CHECK_FALSE(word_problem(Z2Z, ExpWord{{{1, 2}}}));
  CHECK(word_problem(H, ExpWord{{{1, -1}, {0, -1}, {1, 1}, {0, 1}, {2, -1}}}));
  CHECK_FALSE(word_problem(H, ExpWord{{{1, -1}, {0, -1}, {1, 1}, {0, 1}}}));
}

TEST_CASE("mult, inverse and power examples") {
  auto F12 = FreeNilpotentGroup::get(1, 2);
  auto F22 = FreeNilpotentGroup::get(2, 2);
  QuotientPresentation Z2Z = make_quotient_presentation(F12, {{2, 0}});
  QuotientPresentation H(F22);

  GroupElement g = make_element(Z2Z, {1, 3});
  CHECK(mult(Z2Z, g, make_element(Z2Z, {0, 0})) == g);
  CHECK(mult(Z2Z, g, make_element(Z2Z, {1, -1})).coords == IntVector{0, 2});
  CHECK(power(H, make_element(H, {1, 1, 0}), 4).coords == IntVector{4, 4, 6});
  CHECK(inverse(Z2Z, g).coords == IntVector{1, -3});
  CHECK(power(Z2Z, g, -3).coords == IntVector{1, -9});
}

TEST_CASE("mixed or unreduced inputs are rejected") {
  auto F12 = FreeNilpotentGroup::get(1, 2);
  QuotientPresentation Z2Z = make_quotient_presentation(F12, {{2, 0}});
  QuotientPresentation Z3Z = make_quotient_presentation(F12, {{3, 0}});
  CHECK_THROWS_AS(make_element(Z2Z, {2, 0}), InputError);
  CHECK_THROWS_AS(make_element(Z2Z, {0}), InputError);
  GroupElement a = make_element(Z2Z, {1, 0});
  GroupElement b = make_element(Z3Z, {2, 0});
  CHECK_THROWS_AS(mult(Z2Z, a, b), InputError);
  CHECK_THROWS_AS(inverse(Z3Z, a), InputError);
}

TEST_CASE("Heisenberg mod q agrees with matrices mod q") {
  std::mt19937_64 rng(11);
  for (long q : {2L, 3L, 5L, 12L}) {
    QuotientPresentation P = brute::exponent_quotient(2, 2, q);
    REQUIRE(P.relators().rows.size() == 3);
    for (int t = 0; t < 100; ++t) {
      ExpWord w = random_word(rng, 3, 20, 30);
      IntVector expected = mod_each(oracle::heisenberg_coords(oracle::heisenberg_eval(w)), q);
      CHECK(normal_form(P, w).coords == expected);
      Int k = Int(static_cast<long>(rng() % 2001) - 1000);
      GroupElement g = normal_form(P, w);
      oracle::Mat3 m = oracle::heisenberg_from_coords(g.coords);
      oracle::Mat3 mk = oracle::Mat3::identity();
      Int kk = abs(k);
      oracle::Mat3 base = sgn(k) < 0 ? oracle::heisenberg_eval(w.inverse()) : m;
      for (Int i = 0; i < kk; ++i) mk = mk * base;
      CHECK(power(P, g, k).coords == mod_each(oracle::heisenberg_coords(mk), q));
    }
  }
}

TEST_CASE("group axioms in finite and infinite quotients") {
  std::mt19937_64 rng(5);
  std::vector<QuotientPresentation> groups = {
      brute::exponent_quotient(3, 2, 2), brute::exponent_quotient(3, 2, 3), brute::exponent_quotient(2, 3, 2),
      QuotientPresentation(FreeNilpotentGroup::get(3, 2)),
      make_quotient_presentation(FreeNilpotentGroup::get(2, 2), {{0, 0, 6}}),
      from_finite_presentation(FreeNilpotentGroup::get(3, 2), {ExpWord{{{0, 4}}}})};
  for (const QuotientPresentation& P : groups) {
    CHECK(consistency_check(P));
    for (int t = 0; t < 40; ++t) {
      GroupElement a = make_element(P, brute::random_element(P, rng));
      GroupElement b = make_element(P, brute::random_element(P, rng));
      GroupElement c = make_element(P, brute::random_element(P, rng));
      GroupElement e = make_element(P, P.identity());
      CHECK(mult(P, mult(P, a, b), c) == mult(P, a, mult(P, b, c)));
      CHECK(mult(P, a, inverse(P, a)) == e);
      CHECK(mult(P, inverse(P, a), a) == e);
      CHECK(mult(P, e, a) == a);
      long n1 = static_cast<long>(rng() % 41) - 20, n2 = static_cast<long>(rng() % 41) - 20;
      CHECK(power(P, a, n1 + n2) == mult(P, power(P, a, n1), power(P, a, n2)));
      ExpWord wa = ExpWord::from_coordinates(a.coords);
      ExpWord wb = ExpWord::from_coordinates(b.coords);
      CHECK(normal_form(P, wa * wb) == mult(P, a, b));
      CHECK(word_problem(P, wa * wb * wa.inverse() * wb.inverse()) ==
            (mult(P, a, b) == mult(P, b, a)));
    }
  }
}

TEST_CASE("finite quotients have the expected order") {
  // Heisenberg mod 3 has 27 elements; the exponent-3 class-3 two-generator quotient has 3^5.
  for (auto [c, r, q] : {std::tuple{2u, 2u, 3L}, {3u, 2u, 3L}, {3u, 2u, 2L}, {2u, 3u, 2L}}) {
    QuotientPresentation P = brute::exponent_quotient(c, r, q);
    REQUIRE(brute::is_finite(P));
    auto all = brute::elements(P);
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < r; ++i) gens.push_back(P.unit(i, 1));
    CHECK(brute::closure(P, gens).size() == all.size());
  }
  CHECK(brute::elements(brute::exponent_quotient(2, 2, 3)).size() == 27);
  CHECK(brute::elements(brute::exponent_quotient(3, 2, 3)).size() == 243);
}
