#include "nilpotent/hall_basis.hpp"

#include "nilpotent/errors.hpp"

namespace nilpotent {

namespace {

int mobius(unsigned n) {
  int result = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

std::size_t witt_rank(unsigned r, unsigned w) {
  long long total = 0;
  for (unsigned d = 1; d <= w; ++d) {
    if (w % d != 0) continue;
    long long p = 1;
    for (unsigned i = 0; i < w / d; ++i) p *= r;
    total += mobius(d) * p;
  }
  return static_cast<std::size_t>(total / w);
}

HallBasis::HallBasis(unsigned c, unsigned r, std::size_t max_letters) : c_(c), r_(r) {
  if (c == 0 || r == 0) throw InputError("nilpotency class and rank must be positive");
  std::size_t m = 0;
  for (unsigned w = 1; w <= c; ++w) {
    m += witt_rank(r, w);
    if (m > max_letters) {
      throw SizeError("basis of F_{" + std::to_string(c) + "," + std::to_string(r) +
                      "} exceeds the cap of " + std::to_string(max_letters) +
                      " letters (m >= " + std::to_string(m) + ")");
    }
  }

  letters_.reserve(m);
  begin_.assign(c + 2, 0);
  begin_[1] = 0;
  for (unsigned g = 0; g < r; ++g) letters_.push_back({1, BasicCommutator::kNone, BasicCommutator::kNone});
  begin_[2] = letters_.size();

  for (unsigned w = 2; w <= c; ++w) {
    const std::size_t existing = letters_.size();
    for (std::size_t u = 0; u < existing; ++u) {
      for (std::size_t v = 0; v < u; ++v) {
        if (letters_[u].weight + letters_[v].weight != w) continue;
        if (letters_[u].weight > 1 && letters_[u].right > v) continue;
        letters_.push_back({w, u, v});
      }
    }
    begin_[w + 1] = letters_.size();
    if (letters_.size() - existing != witt_rank(r, w)) {
      throw InternalError("Hall basis count disagrees with Witt's formula");
    }
  }
}

std::string HallBasis::name(std::size_t i, bool bracketed) const {
  const BasicCommutator& b = letters_.at(i);
  if (!bracketed || b.weight == 1) return "a" + std::to_string(i + 1);
  return "[" + name(b.left, true) + "," + name(b.right, true) + "]";
}

}  // namespace nilpotent
