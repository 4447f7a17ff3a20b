#pragma once

// Independent reference models used to cross-check the library.

#include <algorithm>
#include <array>
#include <cstdlib>

#include "nilpotent/integer.hpp"
#include "nilpotent/word.hpp"

namespace oracle {

using nilpotent::Int;
using nilpotent::IntVector;

struct PairSearch {
  Int g;
  Int x;
  Int y;
};

inline long plain_gcd(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Exhaustive search over |x|,|y| <= max(|a|,|b|,1) for a*x + b*y = gcd(a,b),
/// preferring minimal |x|, then x >= 0, then minimal |y|, then y >= 0.
inline PairSearch bounded_pair_search(long a, long b) {
  long g = plain_gcd(a, b);
  long bound = std::max({std::labs(a), std::labs(b), 1L});
  bool found = false;
  long bx = 0, by = 0;
  auto better = [](long x, long y, long bx, long by) {
    if (std::labs(x) != std::labs(bx)) return std::labs(x) < std::labs(bx);
    if (x != bx) return x > bx;
    if (std::labs(y) != std::labs(by)) return std::labs(y) < std::labs(by);
    return y > by;
  };
  for (long x = -bound; x <= bound; ++x) {
    for (long y = -bound; y <= bound; ++y) {
      if (a * x + b * y != g) continue;
      if (!found || better(x, y, bx, by)) {
        bx = x;
        by = y;
        found = true;
      }
    }
  }
  return {g, bx, by};
}

/// 3x3 integer matrices. Upper unitriangular ones model F_{2,2} via
/// a1 -> I + E23, a2 -> I + E12, which sends [a2,a1] to I + E13. The Mal'cev
/// coordinates of a1^x a2^y a3^z are then read off as (M23, M12, M13).
struct Mat3 {
  std::array<std::array<Int, 3>, 3> e{};

  static Mat3 identity() {
    Mat3 m;
    for (int i = 0; i < 3; ++i) m.e[i][i] = 1;
    return m;
  }
  /// I + n*E_{ij}; powers of elementary unitriangular matrices are exact.
  static Mat3 elementary(int i, int j, const Int& n) {
    Mat3 m = identity();
    m.e[i][j] = n;
    return m;
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Int s = 0;
        for (int k = 0; k < 3; ++k) s += e[i][k] * o.e[k][j];
        m.e[i][j] = s;
      }
    return m;
  }
  bool operator==(const Mat3&) const = default;
};

inline Mat3 heisenberg_letter(std::size_t letter, const Int& n) {
  switch (letter) {
    case 0: return Mat3::elementary(1, 2, n);
    case 1: return Mat3::elementary(0, 1, n);
    default: return Mat3::elementary(0, 2, n);
  }
}

inline Mat3 heisenberg_eval(const nilpotent::ExpWord& w) {
  Mat3 m = Mat3::identity();
  for (const auto& f : w.factors) m = m * heisenberg_letter(f.letter, f.exponent);
  return m;
}

inline Mat3 heisenberg_from_coords(const IntVector& v) {
  return heisenberg_letter(0, v[0]) * heisenberg_letter(1, v[1]) * heisenberg_letter(2, v[2]);
}

inline IntVector heisenberg_coords(const Mat3& m) { return {m.e[1][2], m.e[0][1], m.e[0][2]}; }

}  // namespace oracle
