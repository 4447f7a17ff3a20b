#include "nilpotent/subgroup_reduction.hpp"

#include <algorithm>
#include <unordered_map>

#include "nilpotent/bounded_extgcd.hpp"
#include "nilpotent/errors.hpp"

namespace nilpotent {

namespace {

void push_merged(ExpWord& w, std::size_t letter, const Int& exponent) {
  if (sgn(exponent) == 0) return;
  if (!w.factors.empty() && w.factors.back().letter == letter) {
    w.factors.back().exponent += exponent;
    if (sgn(w.factors.back().exponent) == 0) w.factors.pop_back();
    return;
  }
  w.factors.push_back({letter, exponent});
}

}  // namespace

ExpressionTable::ExpressionTable(std::size_t generators) : generators_(generators), nodes_(generators) {}

std::size_t ExpressionTable::product(std::vector<std::pair<std::size_t, Int>> factors) {
  for (const auto& f : factors) {
    if (f.first >= nodes_.size()) throw InternalError("expression refers to a future node");
  }
  nodes_.push_back(std::move(factors));
  return nodes_.size() - 1;
}

ExpWord ExpressionTable::expand(std::size_t node, std::size_t max_length) const {
  std::unordered_map<std::size_t, ExpWord> memo;
  auto rec = [&](auto&& self, std::size_t n) -> const ExpWord& {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    ExpWord w;
    if (n < generators_) {
      w.factors.push_back({n, 1});
    } else {
      for (const auto& [child, e] : nodes_.at(n)) {
        if (sgn(e) == 0) continue;
        const ExpWord& cw = self(self, child);
        if (cw.factors.size() == 1) {
          push_merged(w, cw.factors[0].letter, cw.factors[0].exponent * e);
        } else if (!cw.factors.empty()) {
          Int total = Int(w.factors.size()) + abs(e) * Int(cw.factors.size());
          if (total > Int(max_length)) {
            throw SizeError("expression over the original generators exceeds the cap of " +
                            std::to_string(max_length) + " factors");
          }
          ExpWord rep = sgn(e) > 0 ? cw : cw.inverse();
          for (unsigned long k = Int(abs(e)).get_ui(); k > 0; --k) {
            for (const Factor& f : rep.factors) push_merged(w, f.letter, f.exponent);
          }
        }
      }
    }
    if (w.factors.size() > max_length) {
      throw SizeError("expression over the original generators exceeds the cap of " +
                      std::to_string(max_length) + " factors");
    }
    return memo.emplace(n, std::move(w)).first->second;
  };
  return rec(rec, node);
}

CoordinateMatrix CoordinateMatrix::from_rows(std::vector<IntVector> rows, bool track) {
  CoordinateMatrix M;
  M.rows = std::move(rows);
  if (track) {
    M.expressions = std::make_shared<ExpressionTable>(M.rows.size());
    for (std::size_t i = 0; i < M.rows.size(); ++i) M.nodes.push_back(i);
  }
  return M;
}

ExpWord CoordinateMatrix::expression(std::size_t row, std::size_t max_length) const {
  if (!tracked()) throw InputError("matrix does not track expressions");
  return expressions->expand(nodes.at(row), max_length);
}

ExpWord FullFormResult::expression(std::size_t row, std::size_t max_length) const {
  if (!tracked()) throw InputError("full form was computed without tracking");
  return expressions->expand(nodes.at(row), max_length);
}

CoordinateMatrix apply_row_operation(const PolycyclicGroup& G, CoordinateMatrix M, const RowOperation& op) {
  const std::size_t n = M.rows.size();
  auto check = [&](std::size_t i) {
    if (i >= n) throw InputError("row index " + std::to_string(i + 1) + " out of range");
  };
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, row_op::Swap>) {
          check(o.i);
          check(o.j);
          std::swap(M.rows[o.i], M.rows[o.j]);
          if (M.tracked()) std::swap(M.nodes[o.i], M.nodes[o.j]);
        } else if constexpr (std::is_same_v<T, row_op::MultiplyRow>) {
          check(o.i);
          check(o.j);
          if (o.i == o.j) throw InputError("row operation h_i h_i^l is not invertible in general");
          M.rows[o.i] = G.multiply(M.rows[o.i], G.power(M.rows[o.j], o.l));
          if (M.tracked()) M.nodes[o.i] = M.expressions->product({{M.nodes[o.i], 1}, {M.nodes[o.j], o.l}});
        } else if constexpr (std::is_same_v<T, row_op::AppendTrivial>) {
          M.rows.push_back(G.identity());
          if (M.tracked()) M.nodes.push_back(M.expressions->identity());
        } else if constexpr (std::is_same_v<T, row_op::AppendRelator>) {
          if (o.column >= G.length() || !G.has_finite_order(o.column)) {
            throw InputError("column " + std::to_string(o.column + 1) + " has no power relation");
          }
          M.rows.push_back(G.power_relator(o.column));
          if (M.tracked()) M.nodes.push_back(M.expressions->identity());
        } else if constexpr (std::is_same_v<T, row_op::RemoveRow>) {
          check(o.i);
          if (!G.is_identity(M.rows[o.i])) throw InputError("cannot remove a non-trivial row");
          M.rows.erase(M.rows.begin() + static_cast<std::ptrdiff_t>(o.i));
          if (M.tracked()) M.nodes.erase(M.nodes.begin() + static_cast<std::ptrdiff_t>(o.i));
        } else if constexpr (std::is_same_v<T, row_op::InvertRow>) {
          check(o.i);
          M.rows[o.i] = G.inverse(M.rows[o.i]);
          if (M.tracked()) M.nodes[o.i] = M.expressions->product({{M.nodes[o.i], -1}});
        } else if constexpr (std::is_same_v<T, row_op::AppendProduct>) {
          IntVector acc = G.identity();
          std::vector<std::pair<std::size_t, Int>> factors;
          for (const auto& [i, l] : o.factors) {
            check(i);
            acc = G.multiply(acc, G.power(M.rows[i], l));
            if (M.tracked()) factors.emplace_back(M.nodes[i], l);
          }
          M.rows.push_back(std::move(acc));
          if (M.tracked()) M.nodes.push_back(M.expressions->product(std::move(factors)));
        }
      },
      op);
  return M;
}

namespace {

// Working matrix of the reduction: reduced rows plus optional expression nodes.
class Reducer {
 public:
  Reducer(const PolycyclicGroup& G, const CoordinateMatrix& M) : G_(G), table_(M.expressions) {
    for (std::size_t i = 0; i < M.rows.size(); ++i) {
      rows_.push_back(G.reduce(M.rows[i]));
      if (table_) nodes_.push_back(M.nodes[i]);
    }
  }

  FullFormResult run() {
    const std::size_t m = G_.length();
    std::size_t k = 0;
    std::size_t start = 0;
    drop_zero_rows(0);
    while (true) {
      // Step 1: next pivot column among the unfinished rows.
      std::optional<std::size_t> found;
      for (std::size_t col = start; col < m && !found; ++col) {
        for (std::size_t i = k; i < rows_.size(); ++i) {
          if (sgn(rows_[i][col]) != 0) {
            found = col;
            break;
          }
        }
      }
      if (!found) break;
      const std::size_t pi = *found;

      const std::size_t combined = combine_column(k, pi);
      const Int d = rows_[combined][pi];

      // Step 2: clear the column below, reduce the rows above, bring the new row up.
      for (std::size_t i = k; i < combined; ++i) {
        const Int& v = rows_[i][pi];
        if (sgn(v) != 0) multiply_row(i, combined, -Int(v / d));
      }
      for (std::size_t i = 0; i < k; ++i) {
        Int q = floor_div(rows_[i][pi], d);
        if (sgn(q) != 0) multiply_row(i, combined, -q);
      }
      swap_rows(k, combined);

      // Step 3: make the pivot divide the relative order of a torsion column.
      if (G_.has_finite_order(pi)) {
        const Int& e = G_.relative_order(pi);
        PairGcd pg = extgcd_pair_bounded(d, e);
        const Int& delta = pg.g;
        const std::size_t t = append_product({{k, pg.x}});
        if (rows_[t][pi] != delta) throw InternalError("torsion step produced the wrong pivot");
        multiply_row(k, t, -Int(d / delta));
        append_product({{t, -Int(e / delta)}});
        swap_rows(k, t);
        for (std::size_t j = 0; j < k; ++j) {
          Int q = floor_div(rows_[j][pi], delta);
          if (sgn(q) != 0) multiply_row(j, k, -q);
        }
      }

      // Step 4: close the remaining rows under conjugation by h_k^{+-1}, and
      // add the power of h_k that lands below the pivot.
      const std::size_t range = m - pi - 1;
      const std::size_t end = rows_.size();
      for (std::size_t j = k + 1; j < end; ++j) {
        if (is_zero(rows_[j])) continue;
        for (std::size_t l = 1; l <= range; ++l) {
          for (int sign : {1, -1}) {
            Int ell = Int(static_cast<unsigned long>(l)) * sign;
            IntVector hk = G_.power(rows_[k], ell);
            IntVector conj = G_.multiply(G_.multiply(G_.inverse(hk), rows_[j]), hk);
            append(std::move(conj), {{k, -ell}, {j, 1}, {k, ell}});
          }
        }
      }
      if (G_.has_finite_order(pi)) {
        Int exponent = G_.relative_order(pi) / rows_[k][pi];
        append_product({{k, exponent}});
      }

      // Step 5: drop trivial rows, then keep the tail generating set small.
      drop_zero_rows(k + 1);
      compress_tail(k + 1, pi + 1);
      start = pi + 1;
      ++k;
    }
    drop_zero_rows(k);
    if (rows_.size() != k) throw InternalError("unfinished rows left after the last pivot");

    FullFormResult out;
    out.matrix.rows = rows_;
    for (const IntVector& r : rows_) out.matrix.pivots.push_back(*pivot_of(r));
    if (table_) {
      out.expressions = table_;
      out.nodes = nodes_;
    }
    return out;
  }

 private:
  void multiply_row(std::size_t i, std::size_t j, const Int& l) {
    rows_[i] = G_.multiply(rows_[i], G_.power(rows_[j], l));
    if (table_) nodes_[i] = table_->product({{nodes_[i], 1}, {nodes_[j], l}});
  }

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(rows_[i], rows_[j]);
    if (table_) std::swap(nodes_[i], nodes_[j]);
  }

  std::size_t append(IntVector row, const std::vector<std::pair<std::size_t, Int>>& factors) {
    rows_.push_back(std::move(row));
    if (table_) {
      std::vector<std::pair<std::size_t, Int>> f;
      for (const auto& [i, l] : factors) f.emplace_back(nodes_[i], l);
      nodes_.push_back(table_->product(std::move(f)));
    }
    return rows_.size() - 1;
  }

  std::size_t append_product(const std::vector<std::pair<std::size_t, Int>>& factors) {
    IntVector acc = G_.identity();
    for (const auto& [i, l] : factors) {
      if (sgn(l) != 0) acc = G_.multiply(acc, G_.power(rows_[i], l));
    }
    std::vector<std::pair<std::size_t, Int>> used;
    for (const auto& f : factors) {
      if (sgn(f.second) != 0) used.push_back(f);
    }
    return append(std::move(acc), used);
  }

  // Appends prod_{i >= first} h_i^{l_i} whose entry at `col` is the gcd of the
  // column (bounded coefficients l_i), and returns its index.
  std::size_t combine_column(std::size_t first, std::size_t col) {
    IntVector values;
    for (std::size_t i = first; i < rows_.size(); ++i) values.push_back(rows_[i][col]);
    BoundedGcd bg = extgcd_bounded(values);
    std::vector<std::pair<std::size_t, Int>> factors;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (sgn(bg.x[i]) != 0) factors.emplace_back(first + i, bg.x[i]);
    }
    const std::size_t idx = append_product(factors);
    const IntVector& row = rows_[idx];
    for (std::size_t c = 0; c < col; ++c) {
      if (sgn(row[c]) != 0) throw InternalError("combination row is non-zero before the pivot");
    }
    if (row[col] != bg.g) throw InternalError("combination row does not carry the column gcd");
    return idx;
  }

  void drop_zero_rows(std::size_t first) {
    std::size_t out = first;
    for (std::size_t i = first; i < rows_.size(); ++i) {
      if (is_zero(rows_[i])) continue;
      if (out != i) {
        rows_[out] = std::move(rows_[i]);
        if (table_) nodes_[out] = nodes_[i];
      }
      ++out;
    }
    rows_.resize(out);
    if (table_) nodes_.resize(out);
  }

  // Replaces rows [first, end) by an echelon generating set of the same
  // subgroup, using only row operations among those rows.
  void compress_tail(std::size_t first, std::size_t col) {
    const std::size_t m = G_.length();
    std::size_t top = first;
    for (; col < m && top < rows_.size(); ++col) {
      bool any = false;
      for (std::size_t i = top; i < rows_.size() && !any; ++i) any = sgn(rows_[i][col]) != 0;
      if (!any) continue;
      const std::size_t combined = combine_column(top, col);
      const Int d = rows_[combined][col];
      for (std::size_t i = top; i < combined; ++i) {
        const Int& v = rows_[i][col];
        if (sgn(v) != 0) multiply_row(i, combined, -Int(v / d));
      }
      swap_rows(top, combined);
      drop_zero_rows(top + 1);
      ++top;
    }
  }

  const PolycyclicGroup& G_;
  std::shared_ptr<ExpressionTable> table_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> nodes_;
};

}  // namespace

FullFormResult full_form(const PolycyclicGroup& G, const CoordinateMatrix& M) {
  for (const IntVector& r : M.rows) {
    if (r.size() != G.length()) {
      throw InputError("row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(G.length()));
    }
  }
  return Reducer(G, M).run();
}

FullFormResult full_form(const PolycyclicGroup& G, const std::vector<IntVector>& rows, bool track) {
  return full_form(G, CoordinateMatrix::from_rows(rows, track));
}

FullFormMatrix suffix(const FullFormMatrix& F, std::size_t first) {
  FullFormMatrix out;
  for (std::size_t i = first; i < F.rows.size(); ++i) {
    out.rows.push_back(F.rows[i]);
    out.pivots.push_back(F.pivots[i]);
  }
  return out;
}

std::optional<MembershipWitness> membership(const PolycyclicGroup& G, const FullFormMatrix& F, const IntVector& h) {
  if (h.size() != G.length()) throw InputError("element has the wrong number of coordinates");
  IntVector x = G.reduce(h);
  MembershipWitness w;
  w.gamma.assign(F.rows.size(), 0);
  std::size_t col = 0;
  for (std::size_t j = 0; j < F.rows.size(); ++j) {
    const std::size_t p = F.pivots[j];
    for (; col < p; ++col) {
      if (sgn(x[col]) != 0) return std::nullopt;
    }
    const Int& a = F.rows[j][p];
    if (!divides(a, x[p])) return std::nullopt;
    Int g = x[p] / a;
    w.gamma[j] = g;
    if (sgn(g) != 0) x = G.multiply(G.power(F.rows[j], -g), x);
    if (sgn(x[p]) != 0) throw InternalError("membership: pivot coordinate not cleared");
  }
  if (!is_zero(x)) return std::nullopt;
  return w;
}

ExpWord express_in_original_generators(const FullFormResult& F, const MembershipWitness& w, std::size_t max_length) {
  if (!F.tracked()) throw InputError("full form was computed without tracking");
  ExpWord out;
  for (std::size_t j = 0; j < w.gamma.size(); ++j) {
    if (sgn(w.gamma[j]) == 0) continue;
    ExpWord part = F.expression(j, max_length);
    if (part.factors.size() == 1) {
      push_merged(out, part.factors[0].letter, part.factors[0].exponent * w.gamma[j]);
      continue;
    }
    if (part.factors.empty()) continue;
    Int total = Int(out.factors.size()) + abs(w.gamma[j]) * Int(part.factors.size());
    if (total > Int(max_length)) {
      throw SizeError("expression over the original generators exceeds the cap of " + std::to_string(max_length) +
                      " factors");
    }
    ExpWord rep = sgn(w.gamma[j]) > 0 ? part : part.inverse();
    for (unsigned long k = Int(abs(w.gamma[j])).get_ui(); k > 0; --k) {
      for (const Factor& f : rep.factors) push_merged(out, f.letter, f.exponent);
    }
  }
  return out;
}

std::optional<MembershipWitness> membership(const PolycyclicGroup& G, const FullFormResult& F, const IntVector& h,
                                            std::size_t max_length) {
  auto w = membership(G, F.matrix, h);
  if (w && F.tracked()) w->word = express_in_original_generators(F, *w, max_length);
  return w;
}

IntVector evaluate_over(const PolycyclicGroup& G, const std::vector<IntVector>& rows, const ExpWord& w) {
  IntVector acc = G.identity();
  for (const Factor& f : w.factors) {
    if (f.letter >= rows.size()) throw InputError("word refers to generator h" + std::to_string(f.letter + 1));
    acc = G.multiply(acc, G.power(rows[f.letter], f.exponent));
  }
  return acc;
}

std::optional<FullFormViolation> full_form_violation(const PolycyclicGroup& G, const std::vector<IntVector>& rows) {
  FullFormMatrix F;
  F.rows = rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != G.length()) {
      return FullFormViolation{"(i)", "row " + std::to_string(i + 1) + " has the wrong length"};
    }
    auto p = pivot_of(rows[i]);
    if (!p) return FullFormViolation{"(i)", "row " + std::to_string(i + 1) + " is zero"};
    F.pivots.push_back(*p);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!G.is_reduced(rows[i])) {
      return FullFormViolation{"(i)", "row " + std::to_string(i + 1) + " is not a reduced element"};
    }
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (F.pivots[i] <= F.pivots[i - 1]) {
      return FullFormViolation{"(ii)", "pivots of rows " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                           " are not strictly increasing"};
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (sgn(rows[i][F.pivots[i]]) <= 0) {
      return FullFormViolation{"(iii)", "pivot of row " + std::to_string(i + 1) + " is not positive"};
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Int& a = rows[i][F.pivots[i]];
    for (std::size_t k = 0; k < i; ++k) {
      const Int& v = rows[k][F.pivots[i]];
      if (sgn(v) < 0 || v >= a) {
        return FullFormViolation{"(iv)", "entry of row " + std::to_string(k + 1) + " above the pivot of row " +
                                             std::to_string(i + 1) + " is not reduced"};
      }
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t p = F.pivots[i];
    if (G.has_finite_order(p) && !divides(rows[i][p], G.relative_order(p))) {
      return FullFormViolation{"(v)", "pivot of row " + std::to_string(i + 1) + " does not divide the relative order"};
    }
  }
  // (vi), checked from the bottom so that each tail is already known to be full.
  for (std::size_t k = rows.size(); k-- > 0;) {
    FullFormMatrix tail = suffix(F, k + 1);
    const IntVector hk_inv = G.inverse(rows[k]);
    for (std::size_t j = k + 1; j < rows.size(); ++j) {
      IntVector a = G.multiply(G.multiply(hk_inv, rows[j]), rows[k]);
      IntVector b = G.multiply(G.multiply(rows[k], rows[j]), hk_inv);
      if (!membership(G, tail, a) || !membership(G, tail, b)) {
        return FullFormViolation{"(vi)", "conjugates of row " + std::to_string(j + 1) + " by row " +
                                             std::to_string(k + 1) + " leave the later rows' subgroup"};
      }
    }
    const std::size_t p = F.pivots[k];
    if (G.has_finite_order(p)) {
      IntVector pw = G.power(rows[k], G.relative_order(p) / rows[k][p]);
      if (!membership(G, tail, pw)) {
        return FullFormViolation{"(vi)", "torsion power of row " + std::to_string(k + 1) +
                                             " leaves the later rows' subgroup"};
      }
    }
  }
  return std::nullopt;
}

SubgroupPresentation subgroup_presentation(const PolycyclicGroup& G, const std::vector<IntVector>& rows) {
  SubgroupPresentation out;
  out.generators = full_form(G, rows).matrix;
  const FullFormMatrix& F = out.generators;
  const std::size_t s = F.size();
  NilpotentPresentation& P = out.presentation;
  P.size = s;
  P.orders.resize(s);
  P.power_tails.resize(s);
  P.conjugate_tails.resize(s);
  P.inverse_conjugate_tails.resize(s);

  auto tail_of = [&](const IntVector& element, std::size_t first) {
    auto w = membership(G, suffix(F, first), element);
    if (!w) throw InternalError("relation tail is not in the expected subgroup");
    IntVector t(s);
    for (std::size_t l = 0; l < w->gamma.size(); ++l) t[first + l] = w->gamma[l];
    return t;
  };

  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t p = F.pivots[i];
    if (G.has_finite_order(p)) {
      Int e = G.relative_order(p) / F.rows[i][p];
      P.orders[i] = e;
      P.power_tails[i] = tail_of(G.power(F.rows[i], e), i + 1);
    }
  }
  for (std::size_t j = 0; j < s; ++j) {
    P.conjugate_tails[j].resize(j);
    P.inverse_conjugate_tails[j].resize(j);
    const IntVector gj_inv = G.inverse(F.rows[j]);
    for (std::size_t i = 0; i < j; ++i) {
      P.conjugate_tails[j][i] = tail_of(G.commutator(F.rows[j], F.rows[i]), j + 1);
      P.inverse_conjugate_tails[j][i] = tail_of(G.commutator(gj_inv, F.rows[i]), j + 1);
    }
  }
  return out;
}

}  // namespace nilpotent
