#include "nilpotent/presentations.hpp"

#include <map>
#include <set>

#include "nilpotent/collector.hpp"
#include "nilpotent/errors.hpp"
#include "nilpotent/subgroup_reduction.hpp"

namespace nilpotent {

std::optional<std::size_t> pivot_of(const IntVector& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (sgn(row[i]) != 0) return i;
  }
  return std::nullopt;
}

QuotientPresentation::QuotientPresentation(std::shared_ptr<const FreeNilpotentGroup> free)
    : QuotientPresentation(std::move(free), {}, Unchecked{}) {}

QuotientPresentation::QuotientPresentation(std::shared_ptr<const FreeNilpotentGroup> free,
                                           std::vector<IntVector> rows, Unchecked)
    : free_(std::move(free)) {
  if (!free_) throw InputError("missing free nilpotent group");
  const std::size_t m = free_->size();
  std::vector<std::optional<Int>> orders(m);
  row_of_column_.assign(m, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) throw InputError("relator row " + std::to_string(i + 1) + " has the wrong length");
    auto p = pivot_of(rows[i]);
    if (!p) throw InputError("relator row " + std::to_string(i + 1) + " is zero");
    if (sgn(rows[i][*p]) <= 0) throw InputError("relator row " + std::to_string(i + 1) + " has a non-positive pivot");
    if (orders[*p]) throw InputError("two relator rows share pivot column " + std::to_string(*p + 1));
    orders[*p] = rows[i][*p];
    row_of_column_[*p] = i;
    T_.pivots.push_back(*p);
    torsion_.push_back(*p);
    row_series_.push_back(free_->series(rows[i]));
  }
  T_.rows = std::move(rows);
  std::sort(torsion_.begin(), torsion_.end());
  set_orders(std::move(orders));
}

std::vector<FreeNilpotentGroup::TorsionFold> QuotientPresentation::folds() const {
  std::vector<FreeNilpotentGroup::TorsionFold> out(length());
  for (std::size_t col : torsion_) out[col] = {&relative_order(col), &row_series_[row_of_column_[col]]};
  return out;
}

IntVector QuotientPresentation::reduce(const IntVector& v) const {
  check_length(v);
  bool reduced = true;
  for (std::size_t col : torsion_) {
    if (sgn(v[col]) < 0 || v[col] >= relative_order(col)) reduced = false;
  }
  if (reduced) return v;
  return free_->reduced_coordinates(free_->series(v), folds());
}

IntVector QuotientPresentation::multiply(const IntVector& u, const IntVector& v) const {
  if (torsion_.empty()) return free_->multiply(u, v);
  check_length(u);
  check_length(v);
  return free_->reduced_coordinates(free_->multiply(free_->series(u), free_->series(v)), folds());
}

IntVector QuotientPresentation::power(const IntVector& u, const Int& n) const {
  if (torsion_.empty()) return free_->power(u, n);
  return PolycyclicGroup::power(u, n);
}

IntVector QuotientPresentation::inverse(const IntVector& u) const { return reduce(free_->inverse(u)); }

IntVector QuotientPresentation::power_relator(std::size_t i) const {
  if (i >= length() || !has_finite_order(i)) {
    throw InputError("a" + std::to_string(i + 1) + " has no power relation");
  }
  return T_.rows[row_of_column_[i]];
}

IntVector QuotientPresentation::evaluate(const ExpWord& w) const {
  return free_->reduced_coordinates(free_->series(w), folds());
}

QuotientPresentation make_quotient_presentation(std::shared_ptr<const FreeNilpotentGroup> free,
                                                std::vector<IntVector> rows) {
  QuotientPresentation F(free);
  if (auto v = full_form_violation(F, rows)) throw ValidationError(v->condition, v->condition + ": " + v->message);

  FullFormMatrix T;
  T.rows = rows;
  for (const IntVector& r : rows) T.pivots.push_back(*pivot_of(r));
  for (std::size_t g = 0; g < free->rank(); ++g) {
    const IntVector x = free->unit(g);
    const IntVector x_inv = free->unit(g, -1);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!membership(F, T, F.multiply(F.multiply(x_inv, rows[j]), x)) ||
          !membership(F, T, F.multiply(F.multiply(x, rows[j]), x_inv))) {
        throw ValidationError("normality", "normality: the conjugate of row " + std::to_string(j + 1) + " by a" +
                                               std::to_string(g + 1) + " is not generated by the rows");
      }
    }
  }
  return QuotientPresentation(std::move(free), std::move(rows), QuotientPresentation::Unchecked{});
}

NilpotentPresentation to_nilpotent_presentation(const QuotientPresentation& P) {
  const std::size_t m = P.length();
  NilpotentPresentation N;
  N.size = m;
  N.orders = P.relative_orders();
  N.power_tails.resize(m);
  N.conjugate_tails.resize(m);
  N.inverse_conjugate_tails.resize(m);
  std::vector<IntVector> letters(m);
  for (std::size_t i = 0; i < m; ++i) letters[i] = P.unit(i);
  for (std::size_t i = 0; i < m; ++i) {
    if (N.orders[i]) N.power_tails[i] = P.reduce(P.free_group().unit(i, *N.orders[i]));
  }
  for (std::size_t j = 0; j < m; ++j) {
    N.conjugate_tails[j].resize(j);
    N.inverse_conjugate_tails[j].resize(j);
    const IntVector inv = P.inverse(letters[j]);
    for (std::size_t i = 0; i < j; ++i) {
      N.conjugate_tails[j][i] = P.commutator(letters[j], letters[i]);
      N.inverse_conjugate_tails[j][i] = P.commutator(inv, letters[i]);
    }
  }
  return N;
}

namespace {

std::string support_failure(const IntVector& v, std::size_t s, std::size_t above, const std::string& what) {
  if (v.size() != s) return what + " has the wrong length";
  for (std::size_t k = 0; k <= above && k < s; ++k) {
    if (sgn(v[k]) != 0) return what + " is not supported on later generators";
  }
  return {};
}

}  // namespace

std::string consistency_failure(const NilpotentPresentation& P) {
  const std::size_t s = P.size;
  if (P.orders.size() != s || P.power_tails.size() != s || P.conjugate_tails.size() != s ||
      P.inverse_conjugate_tails.size() != s) {
    return "presentation tables have inconsistent sizes";
  }
  for (std::size_t i = 0; i < s; ++i) {
    const std::string gi = "g" + std::to_string(i + 1);
    if (P.orders[i]) {
      if (sgn(*P.orders[i]) <= 0) return "relative order of " + gi + " is not positive";
      if (auto f = support_failure(P.power_tails[i], s, i, "power tail of " + gi); !f.empty()) return f;
    }
    if (P.conjugate_tails[i].size() != i || P.inverse_conjugate_tails[i].size() != i) {
      return "commutation tables of " + gi + " have the wrong size";
    }
    for (std::size_t k = 0; k < i; ++k) {
      const std::string pair = "(" + gi + ", g" + std::to_string(k + 1) + ")";
      if (auto f = support_failure(P.conjugate_tails[i][k], s, i, "conjugation tail " + pair); !f.empty()) return f;
      if (auto f = support_failure(P.inverse_conjugate_tails[i][k], s, i, "inverse conjugation tail " + pair);
          !f.empty())
        return f;
    }
  }

  Collector C(P);
  auto g = [&](std::size_t i, const Int& n) { return C.letter_power(i, n); };
  auto mul = [&](const IntVector& a, const IntVector& b) { return C.multiply(a, b); };
  auto name = [](std::size_t i) { return "g" + std::to_string(i + 1); };

  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (mul(mul(g(k, 1), g(j, 1)), g(i, 1)) != mul(g(k, 1), mul(g(j, 1), g(i, 1)))) {
          return "associativity fails on " + name(k) + " " + name(j) + " " + name(i);
        }
      }
    }
  }
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (P.orders[j]) {
        const Int& e = *P.orders[j];
        if (mul(g(j, e), g(i, 1)) != mul(g(j, e - 1), mul(g(j, 1), g(i, 1)))) {
          return "power relation of " + name(j) + " is incoherent with " + name(i);
        }
      }
      if (P.orders[i]) {
        const Int& e = *P.orders[i];
        if (mul(g(j, 1), g(i, e)) != mul(mul(g(j, 1), g(i, 1)), g(i, e - 1))) {
          return "power relation of " + name(i) + " is incoherent with " + name(j);
        }
      } else if (mul(mul(g(j, 1), g(i, -1)), g(i, 1)) != g(j, 1)) {
        return "inverse of " + name(i) + " does not cancel against " + name(j);
      }
      if (!P.orders[j] && mul(g(j, 1), mul(g(j, -1), g(i, 1))) != g(i, 1)) {
        return "inverse of " + name(j) + " does not cancel against " + name(i);
      }
      if (!P.orders[i] && !P.orders[j] && mul(mul(g(j, -1), g(i, -1)), g(i, 1)) != g(j, -1)) {
        return "inverses of " + name(j) + " and " + name(i) + " do not cancel";
      }
      if (mul(g(j, -1), g(i, 1)) != mul(mul(g(i, 1), g(j, -1)), P.inverse_conjugate_tail(j, i))) {
        return "inverse conjugation relation of (" + name(j) + ", " + name(i) + ") does not hold";
      }
    }
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (!P.orders[i]) continue;
    const Int& e = *P.orders[i];
    if (mul(g(i, 1), g(i, e)) != mul(g(i, e), g(i, 1))) return "power relation of " + name(i) + " is incoherent";
  }
  return {};
}

bool consistency_check(const NilpotentPresentation& P) { return consistency_failure(P).empty(); }

bool consistency_check(const QuotientPresentation& P) { return consistency_check(to_nilpotent_presentation(P)); }

QuotientPresentation from_finite_presentation(std::shared_ptr<const FreeNilpotentGroup> free,
                                              const std::vector<ExpWord>& relators) {
  const std::size_t r = free->rank();
  const unsigned c = free->nilpotency_class();
  std::set<IntVector> seen;
  std::vector<IntVector> generators;
  std::vector<IntVector> level;
  for (const ExpWord& w : relators) {
    for (const Factor& f : w.factors) {
      if (f.letter >= r) {
        throw InputError("relator uses a" + std::to_string(f.letter + 1) + ", which is not a generator");
      }
    }
    IntVector v = free->eval(w);
    if (!is_zero(v) && seen.insert(v).second) {
      generators.push_back(v);
      level.push_back(v);
    }
  }
  std::vector<IntVector> letters;
  for (std::size_t g = 0; g < r; ++g) {
    letters.push_back(free->unit(g));
    letters.push_back(free->unit(g, -1));
  }
  for (unsigned depth = 1; depth < c && !level.empty(); ++depth) {
    std::vector<IntVector> next;
    for (const IntVector& u : level) {
      for (const IntVector& x : letters) {
        IntVector v = free->commutator(u, x);
        if (!is_zero(v) && seen.insert(v).second) {
          generators.push_back(v);
          next.push_back(v);
        }
      }
    }
    level = std::move(next);
  }
  QuotientPresentation F(free);
  FullFormResult T = full_form(F, generators);
  return make_quotient_presentation(std::move(free), std::move(T.matrix.rows));
}

std::vector<std::size_t> embed_letters(const HallBasis& small, const HallBasis& big, unsigned shift) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lookup;
  for (std::size_t k = 0; k < big.size(); ++k) {
    const BasicCommutator& b = big.letter(k);
    if (b.weight > 1) lookup[{b.left, b.right}] = k;
  }
  std::vector<std::size_t> out(small.size());
  for (std::size_t k = 0; k < small.size(); ++k) {
    const BasicCommutator& b = small.letter(k);
    if (b.weight == 1) {
      out[k] = k + shift;
      continue;
    }
    auto it = lookup.find({out[b.left], out[b.right]});
    if (it == lookup.end()) throw InternalError("embedded commutator is not a basic commutator");
    out[k] = it->second;
  }
  return out;
}

QuotientPresentation direct_product(const QuotientPresentation& H, const QuotientPresentation& G) {
  if (!(H.basis() == G.basis())) throw InputError("direct product factors must share class and rank");
  const unsigned c = H.nilpotency_class();
  const unsigned r = H.rank();
  auto big = FreeNilpotentGroup::get(c, 2 * r);
  auto eH = embed_letters(H.basis(), big->basis(), 0);
  auto eG = embed_letters(G.basis(), big->basis(), r);

  std::vector<bool> used(big->size(), false);
  for (std::size_t k : eH) used[k] = true;
  for (std::size_t k : eG) used[k] = true;

  std::vector<IntVector> rows;
  auto place = [&](const IntVector& row, const std::vector<std::size_t>& e) {
    IntVector v(big->size());
    for (std::size_t k = 0; k < row.size(); ++k) v[e[k]] = row[k];
    rows.push_back(std::move(v));
  };
  for (const IntVector& row : H.relators().rows) place(row, eH);
  for (const IntVector& row : G.relators().rows) place(row, eG);
  for (std::size_t k = 0; k < big->size(); ++k) {
    if (!used[k]) rows.push_back(big->unit(k));
  }
  QuotientPresentation F(big);
  FullFormResult T = full_form(F, rows);
  return make_quotient_presentation(big, std::move(T.matrix.rows));
}

}  // namespace nilpotent
