#include <doctest.h>

#include <random>

#include "nilpotent/errors.hpp"
#include "nilpotent/free_nilpotent.hpp"
#include "oracles.hpp"

using namespace nilpotent;

namespace {

Int pow2(unsigned k) {
  Int x;
  mpz_ui_pow_ui(x.get_mpz_t(), 2, k);
  return x;
}

ExpWord random_word(std::mt19937_64& rng, std::size_t letters, std::size_t max_len, unsigned max_bits) {
  ExpWord w;
  std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    Int e = Int(static_cast<unsigned long>(rng() >> (64 - std::max(1u, max_bits % 64))));
    if (max_bits > 63) e = e * pow2(max_bits - 63) + Int(static_cast<unsigned long>(rng() % 1000));
    if (rng() % 2) e = -e;
    w.factors.push_back({rng() % letters, e});
  }
  return w;
}

}  // namespace

TEST_CASE("Hall basis shapes") {
  HallBasis b12(1, 2);
  CHECK(b12.size() == 2);

  HallBasis b22(2, 2);
  REQUIRE(b22.size() == 3);
  CHECK(b22.letter(2).left == 1);
  CHECK(b22.letter(2).right == 0);
  CHECK(b22.name(2, true) == "[a2,a1]");

  HallBasis b32(3, 2);
  CHECK(b32.size() == 5);
  CHECK(b32.weight_end(3) - b32.weight_begin(3) == 2);
  CHECK(b32.name(3, true) == "[[a2,a1],a1]");
  CHECK(b32.name(4, true) == "[[a2,a1],a2]");
}

TEST_CASE("Hall basis counts follow Witt's formula") {
  CHECK(witt_rank(2, 1) == 2);
  CHECK(witt_rank(2, 2) == 1);
  CHECK(witt_rank(2, 3) == 2);
  CHECK(witt_rank(2, 4) == 3);
  CHECK(witt_rank(3, 2) == 3);
  CHECK(witt_rank(3, 3) == 8);
  CHECK(witt_rank(3, 5) == 48);
  for (unsigned r = 1; r <= 3; ++r) {
    for (unsigned c = 1; c <= 5; ++c) {
      HallBasis b(c, r);
      for (unsigned w = 1; w <= c; ++w) {
        CHECK(b.weight_end(w) - b.weight_begin(w) == witt_rank(r, w));
        for (std::size_t k = b.weight_begin(w); k < b.weight_end(w); ++k) {
          CHECK(b.weight(k) == w);
          if (w > 1) {
            const auto& l = b.letter(k);
            CHECK(l.left > l.right);
            CHECK(b.weight(l.left) + b.weight(l.right) == w);
          }
        }
      }
    }
  }
  CHECK_THROWS_AS(HallBasis(6, 3), SizeError);
  CHECK_NOTHROW(HallBasis(6, 3, 200));
}

TEST_CASE("free arithmetic: fixed values") {
  auto F = FreeNilpotentGroup::get(2, 2);
  CHECK(F->eval(ExpWord{}) == IntVector{0, 0, 0});
  CHECK(F->eval(ExpWord{{{1, 1}, {0, 1}}}) == IntVector{1, 1, 1});
  Int big = pow2(60);
  CHECK(F->eval(ExpWord{{{0, big}, {1, 1}, {0, -big}}}) == IntVector{0, 1, -big});

  CHECK(F->multiply({1, 0, 0}, {0, 1, 0}) == IntVector{1, 1, 0});
  CHECK(F->multiply({2, 3, 4}, {0, 0, 0}) == IntVector{2, 3, 4});
  CHECK(F->power({1, 1, 0}, 4) == IntVector{4, 4, 6});
  CHECK(F->power({1, 1, 0}, 0) == IntVector{0, 0, 0});
  CHECK(F->power({1, 1, 0}, -1) == IntVector{-1, -1, 1});
  CHECK(F->inverse({1, 1, 0}) == IntVector{-1, -1, 1});
  CHECK(F->inverse({0, 0, 0}) == IntVector{0, 0, 0});
}

TEST_CASE("free arithmetic: Heisenberg product rule and closed forms") {
  auto F = FreeNilpotentGroup::get(2, 2);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    IntVector u{Int(long(rng() % 41) - 20), Int(long(rng() % 41) - 20), Int(long(rng() % 41) - 20)};
    IntVector v{Int(long(rng() % 41) - 20), Int(long(rng() % 41) - 20), Int(long(rng() % 41) - 20)};
    IntVector expected{u[0] + v[0], u[1] + v[1], u[2] + v[2] + u[1] * v[0]};
    CHECK(F->multiply(u, v) == expected);
  }
  for (long k = -30; k <= 30; ++k) {
    CHECK(F->power({1, 1, 0}, k) == IntVector{k, k, Int(k * (k - 1) / 2)});
  }
}

TEST_CASE("structure relations") {
  auto F = FreeNilpotentGroup::get(2, 2);
  const auto& rel = F->structure_relations();
  CHECK(rel.conjugate_tail(1, 0) == IntVector{0, 0, 1});
  CHECK(rel.inverse_conjugate_tail(1, 0) == IntVector{0, 0, -1});
  // a2^-1 a1 = a1 a2^-1 a3^-1
  CHECK(F->eval(ExpWord{{{1, -1}, {0, 1}}}) == IntVector{1, -1, -1});

  auto A = FreeNilpotentGroup::get(1, 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < j; ++i) CHECK(is_zero(A->structure_relations().conjugate_tail(j, i)));

  auto G = FreeNilpotentGroup::get(4, 2);
  const auto& rg = G->structure_relations();
  for (std::size_t j = 0; j < G->size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const IntVector& t = rg.conjugate_tail(j, i);
      for (std::size_t k = 0; k < G->size(); ++k) {
        if (sgn(t[k]) != 0) {
          CHECK(k > j);
          CHECK(G->basis().weight(k) > G->basis().weight(j));
        }
      }
      // a_j a_i == a_i a_j tail
      IntVector lhs = G->eval(ExpWord{{{j, 1}, {i, 1}}});
      IntVector rhs = G->multiply(G->eval(ExpWord{{{i, 1}, {j, 1}}}), t);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("free arithmetic agrees with the unitriangular model") {
  auto F = FreeNilpotentGroup::get(2, 2);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    ExpWord w = random_word(rng, 3, 50, 60);
    oracle::Mat3 m = oracle::heisenberg_eval(w);
    IntVector coords = F->eval(w);
    REQUIRE(coords == oracle::heisenberg_coords(m));
    REQUIRE(oracle::heisenberg_from_coords(coords) == m);

    ExpWord w2 = random_word(rng, 3, 50, 60);
    oracle::Mat3 m2 = oracle::heisenberg_eval(w2);
    CHECK(F->multiply(coords, F->eval(w2)) == oracle::heisenberg_coords(m * m2));

    Int n = Int(long(rng() % 2001) - 1000);
    oracle::Mat3 p = oracle::Mat3::identity();
    oracle::Mat3 base = n >= 0 ? m : oracle::heisenberg_from_coords(F->inverse(coords));
    for (Int i = 0; i < abs(n); ++i) p = p * base;
    CHECK(F->power(coords, n) == oracle::heisenberg_coords(p));
  }
}

TEST_CASE("free arithmetic properties in larger classes") {
  std::mt19937_64 rng(9);
  for (auto [c, r] : {std::pair{3u, 2u}, {4u, 2u}, {3u, 3u}, {5u, 2u}}) {
    auto F = FreeNilpotentGroup::get(c, r);
    const std::size_t m = F->size();
    for (int t = 0; t < 20; ++t) {
      IntVector u(m), v(m), w(m);
      for (std::size_t k = 0; k < m; ++k) {
        u[k] = long(rng() % 21) - 10;
        v[k] = long(rng() % 21) - 10;
        w[k] = long(rng() % 21) - 10;
      }
      // Round trip through the normal-form word.
      CHECK(F->eval(ExpWord::from_coordinates(u)) == u);
      // Associativity and identity.
      CHECK(F->multiply(F->multiply(u, v), w) == F->multiply(u, F->multiply(v, w)));
      CHECK(F->multiply(u, F->identity()) == u);
      CHECK(F->multiply(F->identity(), u) == u);
      CHECK(is_zero(F->multiply(u, F->inverse(u))));
      // Abelianization is additive.
      IntVector uv = F->multiply(u, v);
      for (std::size_t k = 0; k < r; ++k) CHECK(uv[k] == u[k] + v[k]);
      // Powers agree with repeated products.
      for (int n = -6; n <= 6; ++n) {
        IntVector acc = F->identity();
        IntVector step = n >= 0 ? u : F->inverse(u);
        for (int i = 0; i < std::abs(n); ++i) acc = F->multiply(acc, step);
        CHECK(F->power(u, n) == acc);
      }
    }
  }
}

TEST_CASE("binary exponent case is fast") {
  auto F = FreeNilpotentGroup::get(5, 3);
  Int big = pow2(200);
  ExpWord w{{{0, big}, {1, -big}, {2, big + 1}, {0, -big}, {1, big}}};
  IntVector v = F->eval(w);
  CHECK(v[0] == 0);
  CHECK(v[1] == 0);
  CHECK(v[2] == big + 1);
  CHECK(F->eval(ExpWord::from_coordinates(v)) == v);
}
