#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilpotent/free_nilpotent.hpp"
#include "nilpotent/polycyclic_group.hpp"
#include "nilpotent/word.hpp"

namespace nilpotent {

/// Coordinate matrix in full form: rows in echelon order with their pivot columns.
struct FullFormMatrix {
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivots;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  friend bool operator==(const FullFormMatrix&, const FullFormMatrix&) = default;
};

/// Index of the first non-zero entry, or nullopt for the zero vector.
std::optional<std::size_t> pivot_of(const IntVector& row);

/// G = F_{c,r} / N where N is given by its full-form matrix T over F_{c,r}.
/// The torsion set is the set of pivot columns of T; e_i is the pivot entry.
class QuotientPresentation final : public PolycyclicGroup {
 public:
  struct Unchecked {};

  /// F_{c,r} itself (T empty).
  explicit QuotientPresentation(std::shared_ptr<const FreeNilpotentGroup> free);
  /// Wraps `rows` without validation; see make_quotient_presentation.
  QuotientPresentation(std::shared_ptr<const FreeNilpotentGroup> free, std::vector<IntVector> rows,
                       Unchecked);

  const std::shared_ptr<const FreeNilpotentGroup>& free_ptr() const { return free_; }
  const FreeNilpotentGroup& free_group() const { return *free_; }
  const HallBasis& basis() const { return free_->basis(); }
  unsigned nilpotency_class() const { return free_->nilpotency_class(); }
  unsigned rank() const { return free_->rank(); }

  const FullFormMatrix& relators() const { return T_; }
  /// Torsion set in increasing order.
  const std::vector<std::size_t>& torsion() const { return torsion_; }

  IntVector reduce(const IntVector& v) const override;
  IntVector multiply(const IntVector& u, const IntVector& v) const override;
  IntVector power(const IntVector& u, const Int& n) const override;
  IntVector inverse(const IntVector& u) const override;
  IntVector power_relator(std::size_t i) const override;

  /// Normal form of a word with binary exponents.
  IntVector evaluate(const ExpWord& w) const;

  friend bool operator==(const QuotientPresentation& a, const QuotientPresentation& b) {
    return a.free_->basis() == b.free_->basis() && a.T_ == b.T_;
  }

 private:
  std::vector<FreeNilpotentGroup::TorsionFold> folds() const;

  std::shared_ptr<const FreeNilpotentGroup> free_;
  FullFormMatrix T_;
  std::vector<std::size_t> torsion_;
  std::vector<std::size_t> row_of_column_;  // T-row index per torsion column
  std::vector<TruncatedSeries> row_series_;
};

/// Validates conditions (i)-(vi) of full form plus normality of <rows> and
/// wraps the result. Throws ValidationError naming the first failed condition.
QuotientPresentation make_quotient_presentation(std::shared_ptr<const FreeNilpotentGroup> free,
                                                std::vector<IntVector> rows);

/// Consistent nilpotent presentation on generators g_1..g_s:
///   g_i^{e_i}      = power_tail(i)              (finite e_i only)
///   g_j g_i        = g_i g_j conjugate_tail(j,i)
///   g_j^-1 g_i     = g_i g_j^-1 inverse_conjugate_tail(j,i)
/// for j > i. Tails are vectors of length s supported on indices > i (power)
/// or > j (commutation).
struct NilpotentPresentation {
  std::size_t size = 0;
  std::vector<std::optional<Int>> orders;
  std::vector<IntVector> power_tails;  // empty vector for infinite orders
  std::vector<std::vector<IntVector>> conjugate_tails;          // [j][i], i < j
  std::vector<std::vector<IntVector>> inverse_conjugate_tails;  // [j][i], i < j

  const IntVector& conjugate_tail(std::size_t j, std::size_t i) const { return conjugate_tails[j][i]; }
  const IntVector& inverse_conjugate_tail(std::size_t j, std::size_t i) const {
    return inverse_conjugate_tails[j][i];
  }
};

/// The presentation of G on its basis a_1..a_m read off from the arithmetic.
NilpotentPresentation to_nilpotent_presentation(const QuotientPresentation& P);

/// Collects the overlap test words (associativity on letter triples and
/// coherence of power relations) with an independent collector. Returns an
/// empty string when consistent, else a description of the first failure.
std::string consistency_failure(const NilpotentPresentation& P);
bool consistency_check(const NilpotentPresentation& P);
bool consistency_check(const QuotientPresentation& P);

/// Quotient presentation of <a_1..a_r | relators> in the variety of class-c groups.
QuotientPresentation from_finite_presentation(std::shared_ptr<const FreeNilpotentGroup> free,
                                              const std::vector<ExpWord>& relators);

/// Letter of F_{c,2r} that a letter of F_{c,r} is sent to when its generators
/// are renamed a_i -> a_{i+shift}.
std::vector<std::size_t> embed_letters(const HallBasis& small, const HallBasis& big, unsigned shift);

/// H x G as a quotient of F_{c,2r}: H on generators 1..r, G on r+1..2r.
QuotientPresentation direct_product(const QuotientPresentation& H, const QuotientPresentation& G);

}  // namespace nilpotent
