#include "nilpotent/polycyclic_group.hpp"

#include "nilpotent/errors.hpp"

namespace nilpotent {

void PolycyclicGroup::check_length(const IntVector& v) const {
  if (v.size() != length()) {
    throw InputError("element has " + std::to_string(v.size()) + " coordinates, expected " +
                     std::to_string(length()));
  }
}

IntVector PolycyclicGroup::unit(std::size_t i, const Int& n) const {
  IntVector v(length());
  v.at(i) = n;
  return reduce(v);
}

bool PolycyclicGroup::is_reduced(const IntVector& v) const {
  if (v.size() != length()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (orders_[i] && (sgn(v[i]) < 0 || v[i] >= *orders_[i])) return false;
  }
  return true;
}

IntVector PolycyclicGroup::power(const IntVector& u, const Int& n) const {
  check_length(u);
  IntVector base = sgn(n) < 0 ? inverse(reduce(u)) : reduce(u);
  Int e = abs(n);
  IntVector result = identity();
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = multiply(result, base);
    e >>= 1;
    if (sgn(e) > 0) base = multiply(base, base);
  }
  return result;
}

IntVector PolycyclicGroup::conjugate(const IntVector& g, const IntVector& by) const {
  return multiply(multiply(inverse(by), g), by);
}

IntVector PolycyclicGroup::commutator(const IntVector& x, const IntVector& y) const {
  return multiply(multiply(inverse(x), inverse(y)), multiply(x, y));
}

}  // namespace nilpotent
