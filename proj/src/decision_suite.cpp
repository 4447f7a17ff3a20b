#include "nilpotent/decision_suite.hpp"

#include "nilpotent/errors.hpp"

namespace nilpotent {

namespace {

std::vector<std::optional<Int>> concat_orders(const PolycyclicGroup& a, const PolycyclicGroup& b) {
  auto out = a.relative_orders();
  out.insert(out.end(), b.relative_orders().begin(), b.relative_orders().end());
  return out;
}

}  // namespace

ProductGroup::ProductGroup(const PolycyclicGroup& first, const PolycyclicGroup& second)
    : PolycyclicGroup(concat_orders(first, second)), first_(first), second_(second) {}

IntVector ProductGroup::join(const IntVector& a, const IntVector& b) const {
  IntVector v = a;
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

IntVector ProductGroup::first_part(const IntVector& v) const {
  return IntVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(first_.length()));
}

IntVector ProductGroup::second_part(const IntVector& v) const {
  return IntVector(v.begin() + static_cast<std::ptrdiff_t>(first_.length()), v.end());
}

IntVector ProductGroup::reduce(const IntVector& v) const {
  check_length(v);
  return join(first_.reduce(first_part(v)), second_.reduce(second_part(v)));
}

IntVector ProductGroup::multiply(const IntVector& u, const IntVector& v) const {
  check_length(u);
  check_length(v);
  return join(first_.multiply(first_part(u), first_part(v)), second_.multiply(second_part(u), second_part(v)));
}

IntVector ProductGroup::power(const IntVector& u, const Int& n) const {
  check_length(u);
  return join(first_.power(first_part(u), n), second_.power(second_part(u), n));
}

IntVector ProductGroup::inverse(const IntVector& u) const {
  check_length(u);
  return join(first_.inverse(first_part(u)), second_.inverse(second_part(u)));
}

IntVector ProductGroup::power_relator(std::size_t i) const {
  if (i < first_.length()) return join(first_.power_relator(i), second_.identity());
  return join(first_.identity(), second_.power_relator(i - first_.length()));
}

KernelResult kernel_and_preimage(const HomSpec& spec, const std::optional<IntVector>& h) {
  if (spec.domain.size() != spec.images.size()) {
    throw InputError("homomorphism needs one image per domain generator");
  }
  const QuotientPresentation& G = spec.source;
  const QuotientPresentation& H = spec.target;
  // Target coordinates first, so that rows with a non-trivial image come first.
  ProductGroup HG(H, G);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < spec.domain.size(); ++i) {
    rows.push_back(HG.join(H.reduce(spec.images[i]), G.reduce(spec.domain[i])));
  }
  FullFormMatrix W = full_form(HG, rows).matrix;

  std::size_t r = 0;  // rows [0, r) have a non-trivial image
  while (r < W.size() && W.pivots[r] < H.length()) ++r;

  KernelResult out;
  for (std::size_t i = r; i < W.size(); ++i) {
    out.kernel.rows.push_back(HG.second_part(W.rows[i]));
    out.kernel.pivots.push_back(W.pivots[i] - H.length());
  }
  if (h) {
    FullFormMatrix Y;
    for (std::size_t i = 0; i < r; ++i) {
      Y.rows.push_back(HG.first_part(W.rows[i]));
      Y.pivots.push_back(W.pivots[i]);
    }
    auto w = membership(H, Y, *h);
    if (!w) {
      out.status = PreimageStatus::NotInImage;
    } else {
      IntVector g = G.identity();
      for (std::size_t i = 0; i < r; ++i) {
        if (sgn(w->gamma[i]) != 0) g = G.multiply(g, G.power(HG.second_part(W.rows[i]), w->gamma[i]));
      }
      out.status = PreimageStatus::Found;
      out.preimage = std::move(g);
    }
  }
  return out;
}

QuotientPresentation quotient_by_last_weight(const QuotientPresentation& P) {
  const unsigned c = P.nilpotency_class();
  if (c < 2) throw InputError("quotient by the last weight needs class at least 2");
  auto F = FreeNilpotentGroup::get(c - 1, P.rank());
  const std::size_t m = F->size();
  std::vector<IntVector> rows;
  for (const IntVector& row : P.relators().rows) {
    IntVector t(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m));
    if (!is_zero(t)) rows.push_back(std::move(t));
  }
  QuotientPresentation free(F);
  return make_quotient_presentation(F, full_form(free, rows).matrix.rows);
}

namespace {

IntVector truncate(const QuotientPresentation& Q, const IntVector& v) {
  return Q.reduce(IntVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(Q.length())));
}

IntVector lift(const QuotientPresentation& P, const IntVector& v) {
  IntVector out(P.length());
  std::copy(v.begin(), v.end(), out.begin());
  return P.reduce(out);
}

// Generators of {x : [g, x] in Gamma_c}: lifts of the centralizer of g in
// G / Gamma_c together with the weight-c letters.
std::vector<IntVector> centralizer_mod_last_weight(const QuotientPresentation& P, const QuotientPresentation& Q,
                                                   const IntVector& g) {
  std::vector<IntVector> J;
  for (const IntVector& x : centralizer(Q, truncate(Q, g))) J.push_back(lift(P, x));
  const unsigned c = P.nilpotency_class();
  for (std::size_t k = P.basis().weight_begin(c); k < P.basis().weight_end(c); ++k) J.push_back(P.unit(k));
  return J;
}

HomSpec commutator_map(const QuotientPresentation& P, const IntVector& g, const std::vector<IntVector>& J) {
  HomSpec spec{P, P, J, {}};
  for (const IntVector& x : J) spec.images.push_back(P.commutator(g, x));
  return spec;
}

}  // namespace

std::vector<IntVector> centralizer(const QuotientPresentation& P, const IntVector& g0) {
  const IntVector g = P.reduce(g0);
  if (P.nilpotency_class() == 1) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < P.rank(); ++i) gens.push_back(P.unit(i));
    return full_form(P, gens).matrix.rows;
  }
  QuotientPresentation Q = quotient_by_last_weight(P);
  std::vector<IntVector> J = centralizer_mod_last_weight(P, Q, g);
  return kernel_and_preimage(commutator_map(P, g, J)).kernel.rows;
}

std::optional<IntVector> conjugacy(const QuotientPresentation& P, const IntVector& g0, const IntVector& h0) {
  const IntVector g = P.reduce(g0);
  const IntVector h = P.reduce(h0);
  if (P.nilpotency_class() == 1) {
    if (g == h) return P.identity();
    return std::nullopt;
  }
  QuotientPresentation Q = quotient_by_last_weight(P);
  auto v_bar = conjugacy(Q, truncate(Q, g), truncate(Q, h));
  if (!v_bar) return std::nullopt;
  const IntVector v = lift(P, *v_bar);

  // g^-1 h^v is central; find w in J with [g, w] = g^-1 h^v.
  const IntVector z = P.multiply(P.inverse(g), P.conjugate(h, v));
  std::vector<IntVector> J = centralizer_mod_last_weight(P, Q, g);
  KernelResult k = kernel_and_preimage(commutator_map(P, g, J), z);
  if (k.status != PreimageStatus::Found) return std::nullopt;

  IntVector u = P.multiply(v, P.inverse(*k.preimage));
  if (P.conjugate(h, u) != g) throw InternalError("conjugacy witness does not verify");
  return u;
}

std::optional<Int> element_order(const PolycyclicGroup& G, const IntVector& g) {
  IntVector x = G.reduce(g);
  Int order = 1;
  while (auto p = pivot_of(x)) {
    if (!G.has_finite_order(*p)) return std::nullopt;
    const Int& e = G.relative_order(*p);
    Int d = e / gcd(x[*p], e);
    order *= d;
    x = G.power(x, d);
  }
  return order;
}

Int torsion_bound(const QuotientPresentation& P) {
  Int M = 1;
  for (std::size_t i : P.torsion()) M *= P.relative_order(i);
  return M;
}

namespace {

Int mod_inverse(const Int& a, const Int& n) {
  if (n == 1) return 0;
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0) {
    throw InternalError("modular inverse does not exist");
  }
  return inv;
}

// k = a1 mod n1 and k = a2 mod n2, as a residue mod lcm(n1, n2).
std::optional<std::pair<Int, Int>> crt(const Int& a1, const Int& n1, const Int& a2, const Int& n2) {
  Int g = gcd(n1, n2);
  Int diff = a2 - a1;
  if (!divides(g, diff)) return std::nullopt;
  Int L = lcm(n1, n2);
  Int m2 = n2 / g;
  Int t = floor_mod(Int(diff / g) * mod_inverse(floor_mod(Int(n1 / g), m2), m2), m2);
  return std::make_pair(floor_mod(Int(a1 + n1 * t), L), L);
}

// Some k = alpha (mod beta) with g^k = h, scanning coordinates from `start`;
// g and h are trivial before `start`.
std::optional<Int> solve_power(const QuotientPresentation& P, const IntVector& g, const IntVector& h, std::size_t start,
                               const Int& alpha, const Int& beta) {
  for (std::size_t i = start; i < P.length(); ++i) {
    const Int& k0 = g[i];
    const Int& l0 = h[i];
    if (sgn(k0) == 0) {
      if (sgn(l0) != 0) return std::nullopt;
      continue;
    }
    if (!P.has_finite_order(i)) {
      if (!divides(k0, l0)) return std::nullopt;
      Int n = l0 / k0;
      if (!divides(beta, Int(n - alpha))) return std::nullopt;
      if (P.power(g, n) != h) return std::nullopt;
      return n;
    }
    const Int& e = P.relative_order(i);
    Int d = gcd(k0, e);
    if (!divides(d, l0)) return std::nullopt;
    Int period = e / d;
    Int base = floor_mod(Int((l0 / d) * mod_inverse(floor_mod(Int(k0 / d), period), period)), period);
    auto joint = crt(base, period, floor_mod(alpha, beta), beta);
    if (!joint) return std::nullopt;
    const auto& [kappa, L] = *joint;
    IntVector g1 = P.power(g, L);
    IntVector h1 = P.multiply(P.power(g, -kappa), h);
    if (sgn(g1[i]) != 0 || sgn(h1[i]) != 0) throw InternalError("power problem: coordinate not cleared");
    auto t = solve_power(P, g1, h1, i + 1, 0, 1);
    if (!t) return std::nullopt;
    return kappa + L * *t;
  }
  return floor_mod(alpha, beta);
}

}  // namespace

std::optional<Int> power_problem(const QuotientPresentation& P, const IntVector& g0, const IntVector& h0,
                                 const std::optional<Progression>& progression) {
  Progression prog = progression.value_or(Progression{});
  if (sgn(prog.beta) <= 0) throw InputError("progression modulus must be positive");
  const IntVector g = P.reduce(g0);
  const IntVector h = P.reduce(h0);
  auto k = solve_power(P, g, h, 0, prog.alpha, prog.beta);
  if (!k) return std::nullopt;
  if (auto order = element_order(P, g)) *k = floor_mod(*k, lcm(*order, prog.beta));
  if (P.power(g, *k) != h || !divides(prog.beta, Int(*k - prog.alpha))) {
    throw InternalError("power problem answer does not verify");
  }
  return k;
}

}  // namespace nilpotent
