#pragma once

#include <cstddef>
#include <map>
#include <tuple>

#include "nilpotent/presentations.hpp"

namespace nilpotent {

/// Normal-form arithmetic driven only by the relations of a nilpotent
/// presentation. Multiplying by a_i^n conjugates the part of the element to
/// the right of a_i by a_i^n; that automorphism is applied through cached
/// images of a_j under its 2^t-th powers, so exponents may be large.
class Collector {
 public:
  explicit Collector(const NilpotentPresentation& P);

  std::size_t size() const { return P_.size; }
  IntVector identity() const { return IntVector(P_.size); }

  IntVector letter_power(std::size_t i, const Int& n);
  IntVector multiply(const IntVector& x, const IntVector& y);
  IntVector inverse(const IntVector& x);
  IntVector power(const IntVector& x, const Int& n);

 private:
  IntVector mul_letter(const IntVector& x, std::size_t i, const Int& n);
  IntVector conjugate_power(std::size_t i, const Int& n, IntVector y);
  IntVector apply(std::size_t i, bool backwards, unsigned t, const IntVector& y);
  const IntVector& image(std::size_t i, bool backwards, unsigned t, std::size_t j);

  const NilpotentPresentation& P_;
  std::map<std::tuple<std::size_t, bool, unsigned, std::size_t>, IntVector> images_;
};

}  // namespace nilpotent
