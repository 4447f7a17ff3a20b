#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "nilpotent/hall_basis.hpp"
#include "nilpotent/integer.hpp"
#include "nilpotent/word.hpp"

namespace nilpotent {

/// Element of Z<<X_1..X_r>> truncated above degree c. Coefficients are laid
/// out by degree; within degree d a monomial X_{i_1}...X_{i_d} has local index
/// sum_t i_t * r^{d-t} (0-based variables).
struct TruncatedSeries {
  IntVector coeff;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;
};

/// Tails of the commutation relations of the basis:
///   a_j a_i       = a_i a_j      * conjugate_tail(j, i)
///   a_j^-1 a_i    = a_i a_j^-1   * inverse_conjugate_tail(j, i)
/// for j > i. Tails are full coordinate vectors, zero at indices <= j.
class StructureRelations {
 public:
  StructureRelations() = default;
  StructureRelations(std::size_t m, std::vector<IntVector> conj, std::vector<IntVector> inv_conj)
      : m_(m), conj_(std::move(conj)), inv_conj_(std::move(inv_conj)) {}

  const IntVector& conjugate_tail(std::size_t j, std::size_t i) const { return conj_[j * m_ + i]; }
  const IntVector& inverse_conjugate_tail(std::size_t j, std::size_t i) const {
    return inv_conj_[j * m_ + i];
  }

 private:
  std::size_t m_ = 0;
  std::vector<IntVector> conj_;
  std::vector<IntVector> inv_conj_;
};

/// Exact arithmetic in F_{c,r} on Mal'cev coordinates over the Hall basis,
/// carried by the Magnus embedding a_i -> 1 + X_i.
class FreeNilpotentGroup {
 public:
  /// Shared, lazily built instance per (c, r).
  static std::shared_ptr<const FreeNilpotentGroup> get(
      unsigned c, unsigned r, std::size_t max_letters = HallBasis::kDefaultMaxLetters);

  explicit FreeNilpotentGroup(HallBasis basis);

  const HallBasis& basis() const { return basis_; }
  unsigned nilpotency_class() const { return basis_.nilpotency_class(); }
  unsigned rank() const { return basis_.rank(); }
  std::size_t size() const { return basis_.size(); }

  IntVector identity() const { return IntVector(size()); }
  IntVector unit(std::size_t letter, const Int& exponent = 1) const;

  // Series level.
  TruncatedSeries one() const;
  const TruncatedSeries& letter_series(std::size_t k) const { return letters_[k]; }
  TruncatedSeries letter_power(std::size_t k, const Int& n) const;
  TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b) const;
  TruncatedSeries power(const TruncatedSeries& s, const Int& n) const;
  TruncatedSeries series(const IntVector& coords) const;
  TruncatedSeries series(const ExpWord& w) const;
  /// Mal'cev coordinates of a group-like series. Throws InternalError if the
  /// series is not the image of a group element.
  IntVector coordinates(const TruncatedSeries& s) const;

  /// Power relation used to fold a torsion column: `relator` is the series of
  /// a_k^modulus times letters after k.
  struct TorsionFold {
    const Int* modulus = nullptr;
    const TruncatedSeries* relator = nullptr;
  };
  /// Coordinates of s after right-multiplying by relator powers so that every
  /// folded column lands in [0, modulus). `folds` is indexed by letter; entries
  /// without a modulus (and letters past its end) are left alone.
  IntVector reduced_coordinates(const TruncatedSeries& s, const std::vector<TorsionFold>& folds) const;

  // Coordinate level.
  IntVector eval(const ExpWord& w) const;
  IntVector multiply(const IntVector& u, const IntVector& v) const;
  IntVector power(const IntVector& u, const Int& n) const;
  IntVector inverse(const IntVector& u) const;
  IntVector commutator(const IntVector& x, const IntVector& y) const;

  const StructureRelations& structure_relations() const;

 private:
  struct WeightSolver {
    std::vector<std::size_t> columns;  // selected monomials of this degree
    std::vector<IntVector> inverse;    // denominator-scaled inverse, inverse[t][k]
    Int denominator;
  };

  void check_length(const IntVector& u) const;
  void multiply_into(TruncatedSeries& out, const TruncatedSeries& a, const TruncatedSeries& b) const;
  void letter_power_into(TruncatedSeries& s, std::size_t k, const Int& n) const;
  void solve_weight(unsigned w, const TruncatedSeries& residual, IntVector& alpha, std::size_t from) const;

  HallBasis basis_;
  std::size_t series_size_ = 0;
  std::vector<std::size_t> offset_;     // first index of each degree, offset_[c+1] = size
  std::vector<std::size_t> rpow_;       // r^d
  std::vector<unsigned> degree_;        // degree of each monomial
  std::vector<std::size_t> local_;      // local index within its degree
  std::vector<TruncatedSeries> letters_;
  std::vector<std::vector<TruncatedSeries>> letter_powers_;  // (L_k - 1)^j, j = 1..c/w_k
  std::vector<WeightSolver> solvers_;   // indexed by weight

  mutable std::once_flag relations_once_;
  mutable StructureRelations relations_;
};

}  // namespace nilpotent
