#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nilpotent {

/// Arbitrary-precision integer used for every exponent and coordinate.
using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;

/// Floor division (rounds toward negative infinity). `d` must be non-zero.
inline Int floor_div(const Int& n, const Int& d) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

/// Non-negative remainder of `n` modulo a positive `d`.
inline Int floor_mod(const Int& n, const Int& d) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline bool divides(const Int& d, const Int& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool is_zero(const IntVector& v) {
  for (const Int& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

/// Generalized binomial coefficient n(n-1)...(n-k+1)/k!, valid for negative n.
Int binomial(const Int& n, unsigned k);

/// Parses a decimal integer with optional sign. Returns false on malformed text.
bool parse_int(std::string_view text, Int& out);

std::string to_string(const Int& x);

/// Space-separated decimal rendering of a coordinate vector.
std::string join(const IntVector& v);

}  // namespace nilpotent
