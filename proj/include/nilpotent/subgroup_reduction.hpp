#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nilpotent/polycyclic_group.hpp"
#include "nilpotent/presentations.hpp"
#include "nilpotent/word.hpp"

namespace nilpotent {

inline constexpr std::size_t kDefaultMaxWordLength = 1'000'000;

/// Append-only DAG of products over the original generators h_1..h_n. Nodes
/// 0..n-1 are the generators themselves; every later node is a product
/// node_1^{e_1} ... node_k^{e_k} of earlier nodes.
class ExpressionTable {
 public:
  explicit ExpressionTable(std::size_t generators);

  std::size_t generator_count() const { return generators_; }
  std::size_t product(std::vector<std::pair<std::size_t, Int>> factors);
  std::size_t identity() { return product({}); }

  /// Expands a node into a freely reduced word whose letters are generator
  /// indices. Throws SizeError once the word would exceed `max_length` factors.
  ExpWord expand(std::size_t node, std::size_t max_length = kDefaultMaxWordLength) const;

 private:
  std::size_t generators_;
  std::vector<std::vector<std::pair<std::size_t, Int>>> nodes_;
};

/// Rows h_1..h_n generating a subgroup, optionally with the expression of
/// each row over the original generators.
struct CoordinateMatrix {
  std::vector<IntVector> rows;
  std::shared_ptr<ExpressionTable> expressions;  ///< null when untracked
  std::vector<std::size_t> nodes;                ///< expression node per row

  /// Starts tracking with row i as generator i when `track` is set.
  static CoordinateMatrix from_rows(std::vector<IntVector> rows, bool track = false);

  bool tracked() const { return expressions != nullptr; }
  ExpWord expression(std::size_t row, std::size_t max_length = kDefaultMaxWordLength) const;
};

namespace row_op {
struct Swap {
  std::size_t i, j;
};
/// h_i <- h_i h_j^l
struct MultiplyRow {
  std::size_t i, j;
  Int l;
};
struct AppendTrivial {};
/// Appends the power relator of the torsion column `column` (a trivial element).
struct AppendRelator {
  std::size_t column;
};
/// Removes row i, which must be trivial.
struct RemoveRow {
  std::size_t i;
};
struct InvertRow {
  std::size_t i;
};
/// Appends h_{i_1}^{l_1} ... h_{i_k}^{l_k}.
struct AppendProduct {
  std::vector<std::pair<std::size_t, Int>> factors;
};
}  // namespace row_op

using RowOperation = std::variant<row_op::Swap, row_op::MultiplyRow, row_op::AppendTrivial,
                                  row_op::AppendRelator, row_op::RemoveRow, row_op::InvertRow,
                                  row_op::AppendProduct>;

/// Applies an operation that leaves the generated subgroup unchanged.
/// Throws InputError on bad indices or when removing a non-trivial row.
CoordinateMatrix apply_row_operation(const PolycyclicGroup& G, CoordinateMatrix M, const RowOperation& op);

struct FullFormResult {
  FullFormMatrix matrix;
  std::shared_ptr<ExpressionTable> expressions;  ///< set when the input was tracked
  std::vector<std::size_t> nodes;

  bool tracked() const { return expressions != nullptr; }
  ExpWord expression(std::size_t row, std::size_t max_length = kDefaultMaxWordLength) const;
};

/// The unique full-form sequence generating <rows of M>.
FullFormResult full_form(const PolycyclicGroup& G, const CoordinateMatrix& M);
FullFormResult full_form(const PolycyclicGroup& G, const std::vector<IntVector>& rows, bool track = false);

/// The rows of F from index `first` on; again in full form when F is.
FullFormMatrix suffix(const FullFormMatrix& F, std::size_t first);

struct MembershipWitness {
  IntVector gamma;              ///< h = g_1^{gamma_1} ... g_s^{gamma_s}
  std::optional<ExpWord> word;  ///< over the original generators, when tracked
};

/// Decides h in <F>; F must be in full form.
std::optional<MembershipWitness> membership(const PolycyclicGroup& G, const FullFormMatrix& F, const IntVector& h);

/// Same, additionally expressing h over the original generators of a tracked reduction.
std::optional<MembershipWitness> membership(const PolycyclicGroup& G, const FullFormResult& F, const IntVector& h,
                                            std::size_t max_length = kDefaultMaxWordLength);

/// Substitutes the recorded expressions of the full-form rows into gamma.
ExpWord express_in_original_generators(const FullFormResult& F, const MembershipWitness& w,
                                       std::size_t max_length = kDefaultMaxWordLength);

/// Evaluates a word over the rows h_1..h_n (letters are row indices).
IntVector evaluate_over(const PolycyclicGroup& G, const std::vector<IntVector>& rows, const ExpWord& w);

struct FullFormViolation {
  std::string condition;  ///< "(i)" .. "(vi)"
  std::string message;
};

/// Checks (i)-(v) on the rows and, via membership, the closure condition (vi).
/// Pivots are recomputed from the rows.
std::optional<FullFormViolation> full_form_violation(const PolycyclicGroup& G,
                                                     const std::vector<IntVector>& rows);

struct SubgroupPresentation {
  FullFormMatrix generators;
  NilpotentPresentation presentation;
};

/// Consistent nilpotent presentation of <rows> on its full-form sequence.
SubgroupPresentation subgroup_presentation(const PolycyclicGroup& G, const std::vector<IntVector>& rows);

}  // namespace nilpotent
