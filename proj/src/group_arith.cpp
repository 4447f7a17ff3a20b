#include "nilpotent/group_arith.hpp"

#include "nilpotent/errors.hpp"

namespace nilpotent {

namespace {

void check_operand(const QuotientPresentation& P, const GroupElement& g) {
  if (g.presentation != &P && (g.presentation == nullptr || !(*g.presentation == P))) {
    throw InputError("element belongs to a different presentation");
  }
  if (!P.is_reduced(g.coords)) throw InputError("element is not in normal form");
}

}  // namespace

GroupElement make_element(const QuotientPresentation& P, IntVector coords) {
  GroupElement g{&P, std::move(coords)};
  check_operand(P, g);
  return g;
}

GroupElement normal_form(const QuotientPresentation& P, const ExpWord& w) { return {&P, P.evaluate(w)}; }

bool word_problem(const QuotientPresentation& P, const ExpWord& w) { return is_zero(P.evaluate(w)); }

GroupElement mult(const QuotientPresentation& P, const GroupElement& g, const GroupElement& h) {
  check_operand(P, g);
  check_operand(P, h);
  return {&P, P.multiply(g.coords, h.coords)};
}

GroupElement inverse(const QuotientPresentation& P, const GroupElement& g) {
  check_operand(P, g);
  return {&P, P.inverse(g.coords)};
}

GroupElement power(const QuotientPresentation& P, const GroupElement& g, const Int& n) {
  check_operand(P, g);
  return {&P, P.power(g.coords, n)};
}

}  // namespace nilpotent
