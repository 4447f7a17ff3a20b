#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace nilpotent {

/// A basic commutator. Generators have weight 1 and no parents; every other
/// letter is the group commutator [left, right] = left^-1 right^-1 left right.
struct BasicCommutator {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  unsigned weight = 1;
  std::size_t left = kNone;
  std::size_t right = kNone;

  friend bool operator==(const BasicCommutator&, const BasicCommutator&) = default;
};

/// Number of basic commutators of weight `w` on `r` generators (Witt's formula).
std::size_t witt_rank(unsigned r, unsigned w);

/// Standard Mal'cev basis of the free nilpotent group F_{c,r}: Hall basic
/// commutators ordered by weight, and within a weight lexicographically by
/// (left, right). A pair [u, v] is basic when u > v and, if u = [x, y], y <= v.
class HallBasis {
 public:
  static constexpr std::size_t kDefaultMaxLetters = 80;

  HallBasis(unsigned c, unsigned r, std::size_t max_letters = kDefaultMaxLetters);

  unsigned nilpotency_class() const { return c_; }
  unsigned rank() const { return r_; }
  std::size_t size() const { return letters_.size(); }

  const BasicCommutator& letter(std::size_t i) const { return letters_[i]; }
  unsigned weight(std::size_t i) const { return letters_[i].weight; }

  /// Letters of weight w occupy [weight_begin(w), weight_end(w)).
  std::size_t weight_begin(unsigned w) const { return begin_[w]; }
  std::size_t weight_end(unsigned w) const { return begin_[w + 1]; }

  /// `a3`, or the bracketed form `[a2,a1]` when `bracketed` is set.
  std::string name(std::size_t i, bool bracketed = false) const;

  friend bool operator==(const HallBasis& a, const HallBasis& b) {
    return a.c_ == b.c_ && a.r_ == b.r_;
  }

 private:
  unsigned c_;
  unsigned r_;
  std::vector<BasicCommutator> letters_;
  std::vector<std::size_t> begin_;
};

}  // namespace nilpotent
