#pragma once

#include "nilpotent/presentations.hpp"

namespace nilpotent {

/// Reduced element of a quotient presentation. Holds a non-owning pointer:
/// the presentation must outlive the element.
struct GroupElement {
  const QuotientPresentation* presentation = nullptr;
  IntVector coords;

  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coords == b.coords; }
};

/// Wraps reduced coordinates; throws InputError when out of range.
GroupElement make_element(const QuotientPresentation& P, IntVector coords);

GroupElement normal_form(const QuotientPresentation& P, const ExpWord& w);
bool word_problem(const QuotientPresentation& P, const ExpWord& w);

GroupElement mult(const QuotientPresentation& P, const GroupElement& g, const GroupElement& h);
GroupElement inverse(const QuotientPresentation& P, const GroupElement& g);
GroupElement power(const QuotientPresentation& P, const GroupElement& g, const Int& n);

}  // namespace nilpotent
