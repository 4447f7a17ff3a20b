#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nilpotent/integer.hpp"

namespace nilpotent {

/// A group with a polycyclic generating sequence a_1..a_n in which every
/// element has a unique normal form a_1^{x_1}...a_n^{x_n} with 0 <= x_i < e_i
/// whenever the relative order e_i is finite. Elements are coordinate vectors.
class PolycyclicGroup {
 public:
  virtual ~PolycyclicGroup() = default;

  std::size_t length() const { return orders_.size(); }
  const std::vector<std::optional<Int>>& relative_orders() const { return orders_; }
  bool has_finite_order(std::size_t i) const { return orders_[i].has_value(); }
  const Int& relative_order(std::size_t i) const { return *orders_[i]; }

  /// Normal form of the element represented by `v`. Every vector of the right
  /// length represents an element; reduced vectors are fixed points.
  virtual IntVector reduce(const IntVector& v) const = 0;
  virtual IntVector multiply(const IntVector& u, const IntVector& v) const = 0;
  virtual IntVector power(const IntVector& u, const Int& n) const;
  virtual IntVector inverse(const IntVector& u) const = 0;

  /// Representative of the identity whose first non-zero entry is e_i at i
  /// (the power relation of a_i read as a trivial element). Requires e_i finite.
  virtual IntVector power_relator(std::size_t i) const = 0;

  IntVector identity() const { return IntVector(length()); }
  IntVector unit(std::size_t i, const Int& n = 1) const;
  bool is_reduced(const IntVector& v) const;
  bool is_identity(const IntVector& v) const { return is_zero(reduce(v)); }

  /// by^-1 g by
  IntVector conjugate(const IntVector& g, const IntVector& by) const;
  /// x^-1 y^-1 x y
  IntVector commutator(const IntVector& x, const IntVector& y) const;

 protected:
  PolycyclicGroup() = default;
  explicit PolycyclicGroup(std::vector<std::optional<Int>> orders) : orders_(std::move(orders)) {}
  void set_orders(std::vector<std::optional<Int>> orders) { orders_ = std::move(orders); }
  void check_length(const IntVector& v) const;

 private:
  std::vector<std::optional<Int>> orders_;
};

}  // namespace nilpotent
