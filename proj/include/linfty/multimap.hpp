#pragma once

#include <map>
#include <span>

#include "linfty/koszul.hpp"

namespace linfty {

/// A graded symmetric multilinear map S^k(source) -> target of fixed
/// degree, stored sparsely on normalized source monomials. Every stored
/// value is homogeneous of degree (sum of source degrees) + degree().
class MultiMap {
 public:
  MultiMap(SpacePtr source, SpacePtr target, int arity, int degree);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  int arity() const { return arity_; }
  int degree() const { return degree_; }
  bool is_zero() const { return entries_.empty(); }
  const std::map<Monomial, Element>& entries() const { return entries_; }

  /// Accumulate value on a (possibly unsorted) monomial; the Koszul sign
  /// of sorting is folded into the value. Throws if the value is not
  /// homogeneous of the required degree.
  void add_entry(const Monomial& mono, const Element& value);

  /// Value on basis factors in any order, odd repetitions give zero.
  Element eval_basis(const Monomial& args) const;

  /// Multilinear evaluation; arguments may be inhomogeneous.
  Element eval(std::span<const Element> args) const;

  /// Value on (first, rest...) with an Element in the first slot and basis
  /// indices in the remaining slots.
  Element eval_first(const Element& first, const Monomial& rest) const;

  MultiMap& add_scaled(const Rat& c, const MultiMap& o);

  bool operator==(const MultiMap& o) const;

 private:
  SpacePtr source_, target_;
  int arity_, degree_;
  std::map<Monomial, Element> entries_;
};

}  // namespace linfty
