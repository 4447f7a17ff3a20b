#pragma once

// Extended gcd with coefficients bounded by (n+1)·A², where A is the largest
// absolute input after dividing out the gcd. The pipeline runs the gcd chain
// d_i = gcd(d_{i-1}, a_i), combines pairwise Bezout coefficients into one raw
// solution, then redistributes multiples of the inputs between positive and
// negative coefficients until every coefficient is small.

#include <cstddef>
#include <map>
#include <utility>

#include "nilpotent/integer.hpp"

namespace nilpotent {

struct PairGcd {
  Int g;
  Int x;
  Int y;
};

/// Full intermediate state of `extgcd_bounded`. Every vector is indexed over
/// the non-zero inputs only; `positions` maps them back to the caller's indices.
struct BoundedCombinationTrace {
  std::vector<std::size_t> positions;
  IntVector a;  ///< |a_i| / g for the non-zero inputs
  Int A;        ///< max of `a`
  IntVector d;  ///< gcd chain, d[0] = 0, d[i] = gcd(d[i-1], a[i-1])
  std::vector<std::pair<Int, Int>> yz;
  IntVector x_raw;

  /// False when the coefficient redistribution was skipped: all-zero input,
  /// or a single non-zero input (its raw coefficient is already 1).
  bool reduced = false;
  bool degenerate = false;  ///< all inputs were zero

  std::vector<bool> positive;  ///< membership in the positive index set; the rest is negative
  IntVector p_prime, n_prime;
  IntVector P_prime, N_prime;  ///< prefix sums, P_prime[0] = 0
  Int D;
  IntVector p, n;
  IntVector P, N;  ///< prefix sums, P[0] = 0
  /// (j, i) -> p_{j,i} for j negative, i positive, only non-zero entries.
  std::map<std::pair<std::size_t, std::size_t>, Int> overlap;
  std::map<std::pair<std::size_t, std::size_t>, Int> y_pair;
  IntVector x_final;
};

struct BoundedGcd {
  Int g;
  IntVector x;
  BoundedCombinationTrace trace;
};

/// gcd of all entries; 0 for the empty and the all-zero vector.
Int gcd_vector(const IntVector& a);

/// Bezout pair with |x|,|y| <= max(|a|,|b|,1). Among all such pairs the one
/// with minimal |x| is returned (ties: x >= 0), then minimal |y| (ties: y >= 0).
PairGcd extgcd_pair_bounded(const Int& a, const Int& b);

BoundedGcd extgcd_bounded(const IntVector& a);

/// Redistributes a solution of sum x_i a_i = 1 over positive a_i so that
/// |x_i| <= (n+1)·A². Throws InputError when the precondition fails.
IntVector reduce_coefficients(const IntVector& a, const IntVector& x, const Int& A);

/// Same as `reduce_coefficients`, filling the redistribution fields of `trace`.
IntVector reduce_coefficients(const IntVector& a, const IntVector& x, const Int& A,
                              BoundedCombinationTrace& trace);

/// Checks the identity, the coefficient bound and both counting bounds on a
/// trace. Returns an empty string when all hold, else the first violation.
std::string check_trace(const BoundedCombinationTrace& trace);

}  // namespace nilpotent
