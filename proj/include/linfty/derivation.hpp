#pragma once

#include "linfty/multimap.hpp"

namespace linfty {

/// An arity-indexed family of graded symmetric maps S^k(W) -> W of one
/// common degree, arities 1..cap. This is the component form of a
/// (truncated) derivation of the completed symmetric algebra on W*.
class DerivationRep {
 public:
  DerivationRep(SpacePtr space, int degree, int cap);

  const SpacePtr& space() const { return space_; }
  int degree() const { return degree_; }
  int cap() const { return cap_; }

  MultiMap& comp(int k);
  const MultiMap& comp(int k) const;

  bool is_zero() const;
  DerivationRep& add_scaled(const Rat& c, const DerivationRep& o);
  DerivationRep& operator+=(const DerivationRep& o) {
    return add_scaled(1, o);
  }
  bool operator==(const DerivationRep& o) const;

 private:
  SpacePtr space_;
  int degree_, cap_;
  std::vector<MultiMap> comps_;
};

/// Arity-n component of the unshuffle composite A(B(...),...):
///   sum over l and (l, n-l)-unshuffles of
///   koszul_sign(sigma) * A_{n-l+1}(B_l(x_sigma(first l)), x_sigma(rest)).
/// Requesting n > cap of either family throws.
MultiMap nr_composite_at(const DerivationRep& a, const DerivationRep& b, int n);

DerivationRep nr_composite(const DerivationRep& a, const DerivationRep& b);

/// Commutator bracket [a,b] = a o b - (-1)^{|a||b|} b o a of the
/// derivations the families represent. Arity-n output needs only input
/// components of arity <= n, so the cap never truncates the result.
DerivationRep derivation_bracket(const DerivationRep& a,
                                 const DerivationRep& b);

/// The truncated graded Lie algebra of derivations on Sym(W*), flattened
/// into a GradedSpace whose basis vectors are (monomial, output) pairs.
/// Elements of the flat space are finite derivation families of mixed
/// degree; the bracket is extended bilinearly over homogeneous parts.
class DerAlgebra {
 public:
  DerAlgebra(SpacePtr w, int cap, const std::string& name);

  const SpacePtr& underlying() const { return w_; }
  const SpacePtr& flat() const { return flat_; }
  int cap() const { return cap_; }

  int flat_index(const Monomial& mono, int out) const;  // -1 when absent
  const std::pair<Monomial, int>& meta(int flat_idx) const;

  Element flatten(const DerivationRep& d) const;
  /// Split a flat element into homogeneous DerivationRep parts.
  std::vector<DerivationRep> parts(const Element& e) const;

  Element bracket(const Element& a, const Element& b) const;

 private:
  SpacePtr w_;
  int cap_;
  SpacePtr flat_;
  std::vector<std::pair<Monomial, int>> meta_;
  std::map<std::pair<Monomial, int>, int> index_;
};

}  // namespace linfty
