#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nilpotent/integer.hpp"

namespace nilpotent {

/// One factor `letter^exponent` of a word; letters are 0-based basis indices.
struct Factor {
  std::size_t letter;
  Int exponent;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Word with binary exponents: exponents may have arbitrary magnitude.
struct ExpWord {
  std::vector<Factor> factors;

  /// The Mal'cev normal-form word a_1^{x_1}...a_m^{x_m}, zero exponents omitted.
  static ExpWord from_coordinates(const IntVector& coords);

  ExpWord inverse() const;
  bool empty() const { return factors.empty(); }

  ExpWord& operator*=(const ExpWord& rhs);
  friend ExpWord operator*(ExpWord lhs, const ExpWord& rhs) { return lhs *= rhs; }
  friend bool operator==(const ExpWord&, const ExpWord&) = default;
};

/// Renders `a1^2 a3^-1` (exponent 1 omitted); the empty word renders as `1`.
std::string format_word(const ExpWord& w, char symbol = 'a');

}  // namespace nilpotent
