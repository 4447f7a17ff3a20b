#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nilpotent/polycyclic_group.hpp"
#include "nilpotent/presentations.hpp"
#include "nilpotent/subgroup_reduction.hpp"

namespace nilpotent {

/// first x second with coordinates concatenated in that order. Holds
/// references: both factors must outlive the product.
class ProductGroup final : public PolycyclicGroup {
 public:
  ProductGroup(const PolycyclicGroup& first, const PolycyclicGroup& second);

  IntVector join(const IntVector& a, const IntVector& b) const;
  IntVector first_part(const IntVector& v) const;
  IntVector second_part(const IntVector& v) const;

  IntVector reduce(const IntVector& v) const override;
  IntVector multiply(const IntVector& u, const IntVector& v) const override;
  IntVector power(const IntVector& u, const Int& n) const override;
  IntVector inverse(const IntVector& u) const override;
  IntVector power_relator(std::size_t i) const override;

 private:
  const PolycyclicGroup& first_;
  const PolycyclicGroup& second_;
};

/// phi: <domain> -> target given on generators, domain[i] -> images[i].
/// The assignment is assumed to extend to a homomorphism.
struct HomSpec {
  QuotientPresentation source;
  QuotientPresentation target;
  std::vector<IntVector> domain;
  std::vector<IntVector> images;
};

enum class PreimageStatus { NotRequested, Found, NotInImage };

struct KernelResult {
  FullFormMatrix kernel;  ///< full form of ker(phi) in the source
  PreimageStatus status = PreimageStatus::NotRequested;
  std::optional<IntVector> preimage;
};

KernelResult kernel_and_preimage(const HomSpec& spec, const std::optional<IntVector>& h = std::nullopt);

/// G / Gamma_c as a quotient of F_{c-1,r}; requires c >= 2.
QuotientPresentation quotient_by_last_weight(const QuotientPresentation& P);

/// Generators (in full form) of the centralizer of g.
std::vector<IntVector> centralizer(const QuotientPresentation& P, const IntVector& g);

/// Some u with g = u^-1 h u, or nullopt when g and h are not conjugate.
std::optional<IntVector> conjugacy(const QuotientPresentation& P, const IntVector& g, const IntVector& h);

/// Residue class alpha + beta Z, beta >= 1.
struct Progression {
  Int alpha = 0;
  Int beta = 1;
};

/// k with g^k = h (and k in the progression). For g of finite order the
/// smallest non-negative such k is returned.
std::optional<Int> power_problem(const QuotientPresentation& P, const IntVector& g, const IntVector& h,
                                 const std::optional<Progression>& progression = std::nullopt);

/// Order of g, or nullopt when g has infinite order.
std::optional<Int> element_order(const PolycyclicGroup& G, const IntVector& g);

/// Product of the relative orders over the torsion set; every element of
/// finite order satisfies x^M = 1.
Int torsion_bound(const QuotientPresentation& P);

}  // namespace nilpotent
