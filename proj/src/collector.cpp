#include "nilpotent/collector.hpp"

#include "nilpotent/errors.hpp"

namespace nilpotent {

Collector::Collector(const NilpotentPresentation& P) : P_(P) {}

IntVector Collector::letter_power(std::size_t i, const Int& n) { return mul_letter(identity(), i, n); }

IntVector Collector::multiply(const IntVector& x, const IntVector& y) {
  IntVector out = x;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (sgn(y[k]) != 0) out = mul_letter(out, k, y[k]);
  }
  return out;
}

IntVector Collector::inverse(const IntVector& x) {
  IntVector out = identity();
  for (std::size_t k = x.size(); k-- > 0;) {
    if (sgn(x[k]) != 0) out = mul_letter(out, k, -x[k]);
  }
  return out;
}

IntVector Collector::power(const IntVector& x, const Int& n) {
  IntVector base = sgn(n) < 0 ? inverse(x) : x;
  Int e = abs(n);
  IntVector out = identity();
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) out = multiply(out, base);
    e >>= 1;
    if (sgn(e) > 0) base = multiply(base, base);
  }
  return out;
}

// x a_i^n = P a_i^{x_i + n} (a_i^-n S a_i^n) where x = P a_i^{x_i} S.
IntVector Collector::mul_letter(const IntVector& x, std::size_t i, const Int& n) {
  if (sgn(n) == 0) return x;
  IntVector tail = identity();
  for (std::size_t k = i + 1; k < x.size(); ++k) tail[k] = x[k];
  tail = conjugate_power(i, n, std::move(tail));

  Int total = x[i] + n;
  if (P_.orders[i]) {
    const Int& e = *P_.orders[i];
    Int q = floor_div(total, e);
    total = floor_mod(total, e);
    if (sgn(q) != 0) tail = multiply(power(P_.power_tails[i], q), tail);
  }
  IntVector out = x;
  out[i] = total;
  for (std::size_t k = i + 1; k < x.size(); ++k) out[k] = tail[k];
  return out;
}

IntVector Collector::conjugate_power(std::size_t i, const Int& n, IntVector y) {
  if (is_zero(y)) return y;
  const bool backwards = sgn(n) < 0;
  Int e = abs(n);
  for (unsigned t = 0; sgn(e) > 0; ++t, e >>= 1) {
    if (mpz_odd_p(e.get_mpz_t())) y = apply(i, backwards, t, y);
  }
  return y;
}

IntVector Collector::apply(std::size_t i, bool backwards, unsigned t, const IntVector& y) {
  IntVector out = identity();
  for (std::size_t j = i + 1; j < y.size(); ++j) {
    if (sgn(y[j]) != 0) out = multiply(out, power(image(i, backwards, t, j), y[j]));
  }
  return out;
}

// Image of a_j under conjugation by a_i^{2^t} (or by a_i^{-2^t} when backwards).
const IntVector& Collector::image(std::size_t i, bool backwards, unsigned t, std::size_t j) {
  auto key = std::make_tuple(i, backwards, t, j);
  auto it = images_.find(key);
  if (it != images_.end()) return it->second;

  IntVector value;
  if (t > 0) {
    IntVector half = image(i, backwards, t - 1, j);
    value = apply(i, backwards, t - 1, half);
  } else if (!backwards) {
    // a_i^-1 a_j a_i = a_j * tail
    value = multiply(letter_power(j, 1), P_.conjugate_tail(j, i));
  } else {
    // a_i a_j a_i^-1 = a_j * (a_i tail a_i^-1)^-1
    IntVector conj = apply(i, true, 0, P_.conjugate_tail(j, i));
    value = multiply(letter_power(j, 1), inverse(conj));
  }
  return images_.emplace(key, std::move(value)).first->second;
}

}  // namespace nilpotent
