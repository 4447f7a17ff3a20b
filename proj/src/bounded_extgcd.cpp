#include "nilpotent/bounded_extgcd.hpp"

#include <algorithm>

#include "nilpotent/errors.hpp"

namespace nilpotent {

Int gcd_vector(const IntVector& a) {
  Int g = 0;
  for (const Int& v : a) g = gcd(g, v);
  return g;
}

PairGcd extgcd_pair_bounded(const Int& a, const Int& b) {
  if (sgn(a) == 0 && sgn(b) == 0) return {0, 0, 0};

  Int g, x0, y0;
  mpz_gcdext(g.get_mpz_t(), x0.get_mpz_t(), y0.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());

  // All solutions: x = x0 + k·b/g, y = y0 - k·a/g.
  Int x, y;
  if (sgn(b) == 0) {
    // x is forced; a/g = ±1 so y can be shifted to 0.
    x = x0;
    y = 0;
  } else {
    Int period = abs(b / g);
    Int r = floor_mod(x0, period);
    Int alt = r - period;
    x = (abs(alt) < r) ? alt : r;
    y = (g - a * x) / b;
  }

  Int bound = std::max({Int(abs(a)), Int(abs(b)), Int(1)});
  if (abs(x) > bound || abs(y) > bound || a * x + b * y != g) {
    throw InternalError("extgcd_pair_bounded: canonical pair outside the bound");
  }
  return {g, x, y};
}

namespace {

struct Interval {
  Int begin;
  Int end;  // half-open on the left: (begin, end]
  std::size_t index;
};

// Non-empty intervals (prefix[i], prefix[i+1]] of the indices selected by `mask`.
std::vector<Interval> intervals(const IntVector& counts, const IntVector& prefix,
                                const std::vector<bool>& positive, bool want_positive) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (positive[i] != want_positive || sgn(counts[i]) == 0) continue;
    out.push_back({prefix[i], prefix[i + 1], i});
  }
  return out;
}

}  // namespace

IntVector reduce_coefficients(const IntVector& a, const IntVector& x, const Int& A,
                              BoundedCombinationTrace& t) {
  const std::size_t n = a.size();
  if (x.size() != n || n == 0) {
    throw InputError("reduce_coefficients: coefficient and input vectors differ in length");
  }
  Int max_a = 0;
  Int sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) <= 0) throw InputError("reduce_coefficients: inputs must be positive");
    if (a[i] > max_a) max_a = a[i];
    sum += x[i] * a[i];
  }
  if (A != max_a) throw InputError("reduce_coefficients: A must equal the largest input");
  if (sum != 1) throw InputError("reduce_coefficients: coefficients must combine to 1");

  // A single input is 1 with coefficient 1: nothing to redistribute, and the
  // counting argument does not apply (there is no negative index to absorb the unit).
  if (n == 1) {
    t.reduced = false;
    t.x_final = x;
    return x;
  }

  t.reduced = true;
  const Int A2 = A * A;

  // Zero coefficients join the negative side so that both sides are populated.
  t.positive.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) t.positive[i] = sgn(x[i]) > 0;

  t.p_prime.assign(n, 0);
  t.n_prime.assign(n, 0);
  t.P_prime.assign(n + 1, 0);
  t.N_prime.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Int prod = x[i] * a[i];
    Int up = floor_div(prod, A2);
    Int down = floor_div(-prod, A2);
    t.p_prime[i] = sgn(up) > 0 ? up : Int(0);
    t.n_prime[i] = sgn(down) > 0 ? down : Int(0);
    t.P_prime[i + 1] = t.P_prime[i] + t.p_prime[i];
    t.N_prime[i + 1] = t.N_prime[i] + t.n_prime[i];
  }
  t.D = t.N_prime[n] - t.P_prime[n];

  // The first D positive indices (resp. first -D negative ones) take one more unit.
  t.p = t.p_prime;
  t.n = t.n_prime;
  Int pending = abs(t.D);
  const bool bump_positive = sgn(t.D) > 0;
  for (std::size_t i = 0; i < n && sgn(pending) > 0; ++i) {
    if (t.positive[i] != bump_positive) continue;
    (bump_positive ? t.p[i] : t.n[i]) += 1;
    pending -= 1;
  }
  if (sgn(pending) != 0) throw InternalError("reduce_coefficients: imbalance exceeds index count");

  t.P.assign(n + 1, 0);
  t.N.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    t.P[i + 1] = t.P[i] + t.p[i];
    t.N[i + 1] = t.N[i] + t.n[i];
  }

  // Overlap of the unit intervals owned by positive index i and negative index j.
  auto pos = intervals(t.p, t.P, t.positive, true);
  auto neg = intervals(t.n, t.N, t.positive, false);
  t.overlap.clear();
  t.y_pair.clear();
  std::size_t pi = 0, nj = 0;
  while (pi < pos.size() && nj < neg.size()) {
    const Interval& ip = pos[pi];
    const Interval& in = neg[nj];
    Int lo = std::max(ip.begin, in.begin);
    Int hi = std::min(ip.end, in.end);
    if (hi > lo) {
      Int o = hi - lo;
      auto key = std::make_pair(in.index, ip.index);
      t.overlap[key] = o;
      Int y = floor_div(o * A2, a[ip.index] * a[in.index]);
      if (sgn(y) != 0) t.y_pair[key] = y;
    }
    if (ip.end < in.end) {
      ++pi;
    } else if (in.end < ip.end) {
      ++nj;
    } else {
      ++pi;
      ++nj;
    }
  }

  IntVector out = x;
  for (const auto& [key, y] : t.y_pair) {
    auto [j, i] = key;
    out[i] -= y * a[j];
    out[j] += y * a[i];
  }
  t.x_final = out;
  return out;
}

IntVector reduce_coefficients(const IntVector& a, const IntVector& x, const Int& A) {
  BoundedCombinationTrace scratch;
  return reduce_coefficients(a, x, A, scratch);
}

BoundedGcd extgcd_bounded(const IntVector& input) {
  BoundedGcd result;
  BoundedCombinationTrace& t = result.trace;
  result.x.assign(input.size(), 0);

  for (std::size_t i = 0; i < input.size(); ++i) {
    if (sgn(input[i]) != 0) t.positions.push_back(i);
  }
  if (t.positions.empty()) {
    result.g = 0;
    t.degenerate = true;
    t.A = 0;
    t.d = {0};
    return result;
  }

  result.g = gcd_vector(input);
  const std::size_t k = t.positions.size();
  t.a.resize(k);
  t.A = 0;
  for (std::size_t i = 0; i < k; ++i) {
    t.a[i] = abs(input[t.positions[i]]) / result.g;
    if (t.a[i] > t.A) t.A = t.a[i];
  }

  t.d.assign(k + 1, 0);
  t.yz.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    PairGcd pg = extgcd_pair_bounded(t.d[i], t.a[i]);
    t.d[i + 1] = pg.g;
    t.yz[i] = {pg.x, pg.y};
  }

  // x_i = z_i · prod_{j>i} y_j, accumulated from the right.
  t.x_raw.assign(k, 0);
  Int suffix = 1;
  for (std::size_t i = k; i-- > 0;) {
    t.x_raw[i] = t.yz[i].second * suffix;
    suffix *= t.yz[i].first;
  }

  IntVector reduced = reduce_coefficients(t.a, t.x_raw, t.A, t);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t pos = t.positions[i];
    result.x[pos] = sgn(input[pos]) < 0 ? Int(-reduced[i]) : reduced[i];
  }
  return result;
}

std::string check_trace(const BoundedCombinationTrace& t) {
  if (t.degenerate) return {};
  const std::size_t n = t.a.size();
  if (t.d.back() != 1) return "gcd chain does not end in 1";
  Int raw = 0, fin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    raw += t.x_raw[i] * t.a[i];
    fin += t.x_final[i] * t.a[i];
  }
  if (raw != 1) return "raw coefficients do not combine to 1";
  if (fin != 1) return "final coefficients do not combine to 1";
  const Int bound = Int(n + 1) * t.A * t.A;
  for (const Int& v : t.x_final) {
    if (abs(v) > bound) return "final coefficient exceeds (n+1)A^2";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.d[i + 1] != t.yz[i].first * t.d[i] + t.yz[i].second * t.a[i]) {
      return "pair coefficients do not reproduce the gcd chain";
    }
    if (abs(t.yz[i].first) > t.A || abs(t.yz[i].second) > t.A) return "pair coefficient exceeds A";
  }
  if (!t.reduced) return {};

  std::size_t count_pos = 0;
  for (bool b : t.positive) count_pos += b ? 1 : 0;
  const std::size_t count_neg = n - count_pos;
  if (t.P[n] != t.N[n]) return "P_n != N_n";
  if (t.P_prime[n] - t.N_prime[n] > Int(count_neg)) return "P'_n - N'_n exceeds |N|";
  if (t.N_prime[n] - t.P_prime[n] > Int(count_pos)) return "N'_n - P'_n exceeds |P|";

  IntVector col(n, 0), row(n, 0);
  for (const auto& [key, v] : t.overlap) {
    row[key.first] += v;
    col[key.second] += v;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.positive[i] && col[i] != t.p[i]) return "overlap column sum differs from p_i";
    if (!t.positive[i] && row[i] != t.n[i]) return "overlap row sum differs from n_j";
  }
  return {};
}

}  // namespace nilpotent
