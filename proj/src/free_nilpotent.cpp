#include "nilpotent/free_nilpotent.hpp"

#include <map>
#include <tuple>
#include <utility>

#include "nilpotent/errors.hpp"

namespace nilpotent {

namespace {

bool is_unit_series(const TruncatedSeries& s) {
  if (s.coeff[0] != 1) return false;
  for (std::size_t i = 1; i < s.coeff.size(); ++i) {
    if (sgn(s.coeff[i]) != 0) return false;
  }
  return true;
}

}  // namespace

std::shared_ptr<const FreeNilpotentGroup> FreeNilpotentGroup::get(unsigned c, unsigned r,
                                                                  std::size_t max_letters) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const FreeNilpotentGroup>> cache;

  std::size_t m = 0;
  for (unsigned w = 1; w <= c; ++w) m += witt_rank(r, w);
  if (c == 0 || r == 0) throw InputError("nilpotency class and rank must be positive");
  if (m > max_letters) {
    throw SizeError("basis of F_{" + std::to_string(c) + "," + std::to_string(r) + "} has m = " +
                    std::to_string(m) + " letters, above the cap of " + std::to_string(max_letters));
  }

  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{c, r}];
  if (!slot) slot = std::make_shared<const FreeNilpotentGroup>(HallBasis(c, r, m));
  return slot;
}

FreeNilpotentGroup::FreeNilpotentGroup(HallBasis basis) : basis_(std::move(basis)) {
  const unsigned c = basis_.nilpotency_class();
  const unsigned r = basis_.rank();

  offset_.assign(c + 2, 0);
  rpow_.assign(c + 1, 1);
  for (unsigned d = 1; d <= c; ++d) rpow_[d] = rpow_[d - 1] * r;
  for (unsigned d = 0; d <= c; ++d) offset_[d + 1] = offset_[d] + rpow_[d];
  series_size_ = offset_[c + 1];
  degree_.resize(series_size_);
  local_.resize(series_size_);
  for (unsigned d = 0; d <= c; ++d) {
    for (std::size_t l = 0; l < rpow_[d]; ++l) {
      degree_[offset_[d] + l] = d;
      local_[offset_[d] + l] = l;
    }
  }

  const std::size_t m = basis_.size();
  letters_.resize(m);
  letter_powers_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const BasicCommutator& b = basis_.letter(k);
    if (b.weight == 1) {
      letters_[k] = one();
      letters_[k].coeff[offset_[1] + k] = 1;
    } else {
      const TruncatedSeries& x = letters_[b.left];
      const TruncatedSeries& y = letters_[b.right];
      letters_[k] = multiply(multiply(power(x, -1), power(y, -1)), multiply(x, y));
    }
    TruncatedSeries minus_one = letters_[k];
    minus_one.coeff[0] -= 1;
    const unsigned top = c / b.weight;
    letter_powers_[k].push_back(minus_one);
    for (unsigned j = 2; j <= top; ++j) {
      letter_powers_[k].push_back(multiply(letter_powers_[k].back(), minus_one));
    }
  }

  // For each weight w >= 2, pick columns where the degree-w parts of the
  // weight-w letters form an invertible square matrix, and store its inverse.
  solvers_.resize(c + 1);
  for (unsigned w = 2; w <= c; ++w) {
    const std::size_t lo = basis_.weight_begin(w);
    const std::size_t n = basis_.weight_end(w) - lo;
    const std::size_t width = rpow_[w];
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(width));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < width; ++l) rows[k][l] = letters_[lo + k].coeff[offset_[w] + l];
    }

    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < width && rank < n; ++col) {
      std::size_t sel = rank;
      while (sel < n && sgn(rows[sel][col]) == 0) ++sel;
      if (sel == n) continue;
      std::swap(rows[sel], rows[rank]);
      for (std::size_t k = rank + 1; k < n; ++k) {
        if (sgn(rows[k][col]) == 0) continue;
        Rational f = rows[k][col] / rows[rank][col];
        for (std::size_t l = col; l < width; ++l) rows[k][l] -= f * rows[rank][l];
      }
      pivots.push_back(col);
      ++rank;
    }
    if (rank != n) throw InternalError("leading Lie polynomials of weight " + std::to_string(w) +
                                       " are linearly dependent");

    // Gauss-Jordan on the selected square submatrix S[k][t].
    std::vector<std::vector<Rational>> s(n, std::vector<Rational>(2 * n));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t t = 0; t < n; ++t) s[k][t] = letters_[lo + k].coeff[offset_[w] + pivots[t]];
      s[k][n + k] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t sel = col;
      while (sgn(s[sel][col]) == 0) ++sel;
      std::swap(s[sel], s[col]);
      Rational p = s[col][col];
      for (auto& x : s[col]) x /= p;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == col || sgn(s[k][col]) == 0) continue;
        Rational f = s[k][col];
        for (std::size_t l = 0; l < 2 * n; ++l) s[k][l] -= f * s[col][l];
      }
    }
    // s[:, n..] = S^-1. Coefficients alpha solve alpha * S = v, so alpha = v * S^-1.
    WeightSolver& solver = solvers_[w];
    solver.denominator = 1;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t t = 0; t < n; ++t) solver.denominator = lcm(solver.denominator, s[k][n + t].get_den());
    }
    solver.inverse.assign(n, IntVector(n));
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t k = 0; k < n; ++k) {
        Rational scaled = s[t][n + k] * solver.denominator;
        solver.inverse[t][k] = scaled.get_num();
      }
    }
    for (std::size_t t = 0; t < n; ++t) solver.columns.push_back(offset_[w] + pivots[t]);
  }
}

IntVector FreeNilpotentGroup::unit(std::size_t letter, const Int& exponent) const {
  IntVector v(size());
  v.at(letter) = exponent;
  return v;
}

TruncatedSeries FreeNilpotentGroup::one() const {
  TruncatedSeries s{IntVector(series_size_)};
  s.coeff[0] = 1;
  return s;
}

void FreeNilpotentGroup::multiply_into(TruncatedSeries& out, const TruncatedSeries& a,
                                       const TruncatedSeries& b) const {
  const unsigned c = basis_.nilpotency_class();
  std::vector<bool> block(c + 1, false);
  for (unsigned d = 0; d <= c; ++d) {
    for (std::size_t l = offset_[d]; l < offset_[d + 1]; ++l) {
      if (sgn(b.coeff[l]) != 0) {
        block[d] = true;
        break;
      }
    }
  }
  if (out.coeff.size() == series_size_) {
    for (Int& x : out.coeff) mpz_set_ui(x.get_mpz_t(), 0);
  } else {
    out.coeff.assign(series_size_, Int(0));
  }
  for (std::size_t i = 0; i < series_size_; ++i) {
    const Int& ai = a.coeff[i];
    if (sgn(ai) == 0) continue;
    const unsigned di = degree_[i];
    const std::size_t li = local_[i];
    for (unsigned dj = 0; di + dj <= c; ++dj) {
      if (!block[dj]) continue;
      const std::size_t base = offset_[di + dj] + li * rpow_[dj];
      const std::size_t bj = offset_[dj];
      for (std::size_t lj = 0; lj < rpow_[dj]; ++lj) {
        const Int& x = b.coeff[bj + lj];
        if (sgn(x) == 0) continue;
        mpz_addmul(out.coeff[base + lj].get_mpz_t(), ai.get_mpz_t(), x.get_mpz_t());
      }
    }
  }
}

TruncatedSeries FreeNilpotentGroup::multiply(const TruncatedSeries& a, const TruncatedSeries& b) const {
  TruncatedSeries out;
  multiply_into(out, a, b);
  return out;
}

TruncatedSeries FreeNilpotentGroup::letter_power(std::size_t k, const Int& n) const {
  TruncatedSeries s;
  letter_power_into(s, k, n);
  return s;
}

void FreeNilpotentGroup::letter_power_into(TruncatedSeries& s, std::size_t k, const Int& n) const {
  if (s.coeff.size() == series_size_) {
    for (Int& x : s.coeff) mpz_set_ui(x.get_mpz_t(), 0);
  } else {
    s.coeff.assign(series_size_, Int(0));
  }
  s.coeff[0] = 1;
  if (sgn(n) == 0) return;
  const auto& powers = letter_powers_[k];
  Int b;
  for (unsigned j = 1; j <= powers.size(); ++j) {
    // binom(n, j) for any integer n
    if (j == 1) {
      b = n;
    } else {
      b *= n - (j - 1);
      mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), j);
    }
    if (sgn(b) == 0) break;
    const IntVector& p = powers[j - 1].coeff;
    for (std::size_t i = 0; i < series_size_; ++i) {
      if (sgn(p[i]) != 0) mpz_addmul(s.coeff[i].get_mpz_t(), b.get_mpz_t(), p[i].get_mpz_t());
    }
  }
}

TruncatedSeries FreeNilpotentGroup::power(const TruncatedSeries& s, const Int& n) const {
  TruncatedSeries out = one();
  if (sgn(n) == 0) return out;
  TruncatedSeries minus_one = s;
  minus_one.coeff[0] -= 1;
  TruncatedSeries term = minus_one;
  for (unsigned j = 1; j <= basis_.nilpotency_class(); ++j) {
    if (j > 1) term = multiply(term, minus_one);
    Int b = binomial(n, j);
    for (std::size_t i = 0; i < series_size_; ++i) {
      if (sgn(term.coeff[i]) != 0) mpz_addmul(out.coeff[i].get_mpz_t(), b.get_mpz_t(), term.coeff[i].get_mpz_t());
    }
  }
  return out;
}

void FreeNilpotentGroup::check_length(const IntVector& u) const {
  if (u.size() != size()) {
    throw InputError("coordinate vector has length " + std::to_string(u.size()) + ", expected " +
                     std::to_string(size()));
  }
}

TruncatedSeries FreeNilpotentGroup::series(const IntVector& coords) const {
  check_length(coords);
  TruncatedSeries acc = one();
  TruncatedSeries tmp, lp;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (sgn(coords[k]) == 0) continue;
    letter_power_into(lp, k, coords[k]);
    multiply_into(tmp, acc, lp);
    std::swap(acc, tmp);
  }
  return acc;
}

TruncatedSeries FreeNilpotentGroup::series(const ExpWord& w) const {
  TruncatedSeries acc = one();
  TruncatedSeries tmp, lp;
  for (const Factor& f : w.factors) {
    if (f.letter >= size()) {
      throw InputError("letter a" + std::to_string(f.letter + 1) + " is outside the basis of size " +
                       std::to_string(size()));
    }
    if (sgn(f.exponent) == 0) continue;
    letter_power_into(lp, f.letter, f.exponent);
    multiply_into(tmp, acc, lp);
    std::swap(acc, tmp);
  }
  return acc;
}

IntVector FreeNilpotentGroup::coordinates(const TruncatedSeries& s) const { return reduced_coordinates(s, {}); }

void FreeNilpotentGroup::solve_weight(unsigned w, const TruncatedSeries& residual, IntVector& alpha,
                                      std::size_t from) const {
  const std::size_t lo = basis_.weight_begin(w);
  const std::size_t hi = basis_.weight_end(w);
  if (w == 1) {
    for (std::size_t k = std::max(lo, from); k < hi; ++k) alpha[k] = residual.coeff[offset_[1] + k];
    return;
  }
  const WeightSolver& solver = solvers_[w];
  const std::size_t n = hi - lo;
  Int acc;
  for (std::size_t k = (from > lo ? from - lo : 0); k < n; ++k) {
    mpz_set_ui(acc.get_mpz_t(), 0);
    for (std::size_t t = 0; t < n; ++t) {
      const Int& v = residual.coeff[solver.columns[t]];
      if (sgn(v) != 0) mpz_addmul(acc.get_mpz_t(), v.get_mpz_t(), solver.inverse[t][k].get_mpz_t());
    }
    if (!divides(solver.denominator, acc)) {
      throw InternalError("non-integral coordinate at weight " + std::to_string(w));
    }
    mpz_divexact(alpha[lo + k].get_mpz_t(), acc.get_mpz_t(), solver.denominator.get_mpz_t());
  }
}

IntVector FreeNilpotentGroup::reduced_coordinates(const TruncatedSeries& s,
                                                  const std::vector<TorsionFold>& folds) const {
  if (s.coeff.size() != series_size_ || s.coeff[0] != 1) {
    throw InternalError("series is not group-like");
  }
  const unsigned c = basis_.nilpotency_class();
  IntVector alpha(size());
  TruncatedSeries residual = s;
  TruncatedSeries tmp, lp;
  // residual = (a_1^alpha_1 ... a_{k-1}^alpha_{k-1})^-1 s throughout; a fold
  // right-multiplies by a relator power, which starts at letter k.
  for (unsigned w = 1; w <= c; ++w) {
    const std::size_t lo = basis_.weight_begin(w);
    const std::size_t hi = basis_.weight_end(w);
    solve_weight(w, residual, alpha, lo);
    for (std::size_t k = lo; k < hi; ++k) {
      if (k < folds.size() && folds[k].modulus != nullptr) {
        const Int& e = *folds[k].modulus;
        Int q = floor_div(alpha[k], e);
        if (sgn(q) != 0) {
          multiply_into(tmp, residual, power(*folds[k].relator, -q));
          std::swap(residual, tmp);
          solve_weight(w, residual, alpha, k);
          if (sgn(alpha[k]) < 0 || alpha[k] >= e) throw InternalError("torsion fold left a coordinate out of range");
        }
      }
      if (sgn(alpha[k]) == 0) continue;
      letter_power_into(lp, k, -alpha[k]);
      multiply_into(tmp, lp, residual);
      std::swap(residual, tmp);
    }
    for (std::size_t l = offset_[w]; l < offset_[w + 1]; ++l) {
      if (sgn(residual.coeff[l]) != 0) {
        throw InternalError("degree-" + std::to_string(w) + " residue after peeling weight " +
                            std::to_string(w));
      }
    }
  }
  if (!is_unit_series(residual)) throw InternalError("coordinate extraction left a residue");
  return alpha;
}

IntVector FreeNilpotentGroup::eval(const ExpWord& w) const { return coordinates(series(w)); }

IntVector FreeNilpotentGroup::multiply(const IntVector& u, const IntVector& v) const {
  check_length(u);
  check_length(v);
  if (is_zero(u)) return v;
  if (is_zero(v)) return u;
  TruncatedSeries acc = series(u);
  TruncatedSeries tmp, lp;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    letter_power_into(lp, k, v[k]);
    multiply_into(tmp, acc, lp);
    std::swap(acc, tmp);
  }
  return coordinates(acc);
}

IntVector FreeNilpotentGroup::power(const IntVector& u, const Int& n) const {
  check_length(u);
  if (sgn(n) == 0 || is_zero(u)) return identity();
  if (n == 1) return u;
  if (n == -1) return inverse(u);
  return coordinates(power(series(u), n));
}

IntVector FreeNilpotentGroup::inverse(const IntVector& u) const {
  check_length(u);
  TruncatedSeries acc = one();
  TruncatedSeries tmp, lp;
  for (std::size_t k = u.size(); k-- > 0;) {
    if (sgn(u[k]) == 0) continue;
    letter_power_into(lp, k, -u[k]);
    multiply_into(tmp, acc, lp);
    std::swap(acc, tmp);
  }
  return coordinates(acc);
}

IntVector FreeNilpotentGroup::commutator(const IntVector& x, const IntVector& y) const {
  TruncatedSeries sx = series(x);
  TruncatedSeries sy = series(y);
  return coordinates(multiply(multiply(power(sx, -1), power(sy, -1)), multiply(sx, sy)));
}

const StructureRelations& FreeNilpotentGroup::structure_relations() const {
  std::call_once(relations_once_, [this] {
    const std::size_t m = size();
    std::vector<IntVector> conj(m * m), inv_conj(m * m);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        conj[j * m + i] = eval(ExpWord{{{j, -1}, {i, -1}, {j, 1}, {i, 1}}});
        inv_conj[j * m + i] = eval(ExpWord{{{j, 1}, {i, -1}, {j, -1}, {i, 1}}});
      }
    }
    relations_ = StructureRelations(m, std::move(conj), std::move(inv_conj));
  });
  return relations_;
}

}  // namespace nilpotent
