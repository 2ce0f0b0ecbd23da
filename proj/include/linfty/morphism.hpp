#pragma once

#include "linfty/linfty_structure.hpp"

namespace linfty {

/// An L-infinity map: degree-0 components f_k : S^k(g[1]) -> h[1].
struct LInftyMorphism {
  const LInftyStructure* source;
  const LInftyStructure* target;
  std::vector<MultiMap> f;  // arities 1..cap
  int cap;

  LInftyMorphism(const LInftyStructure& src, const LInftyStructure& dst);
  MultiMap& comp(int k) { return f.at(k - 1); }
  const MultiMap& comp(int k) const { return f.at(k - 1); }
};

LInftyMorphism identity_morphism(const LInftyStructure& s);

/// Both sides of the morphism relation of arity n on a basis monomial:
/// lhs  sum_i sum_{Sh(i,n-i)} eps f_{n-i+1}(m_i(...), ...)
/// rhs  sum_j 1/j! sum_{k_1+..+k_j=n} sum_{Sh(k_1..k_j)} eps
///        m'_j(f_{k_1}(...),...,f_{k_j}(...))
Element morphism_lhs(const LInftyMorphism& F, int n, const Monomial& mono);
Element morphism_rhs(const LInftyMorphism& F, int n, const Monomial& mono);

struct MorphismCheck {
  bool pass = true;
  std::vector<int> checked_arities;
  std::optional<RelationViolation> violation;
};

MorphismCheck check_morphism(const LInftyMorphism& F);
CheckItem check_morphism_item(const LInftyMorphism& F, const std::string& name);

/// f_*(xi) = sum_k 1/k! f_k(xi,...,xi); requires xi MC in the source.
Element mc_pushforward(const LInftyMorphism& F, const Element& xi,
                       const Truncation& cert);

/// The graded Lie algebra gl(V) materialized on elementary maps, with its
/// shifted L-infinity presentation (m2 only). The DerAlgebra provides the
/// commutator.
struct GlAlgebra {
  SpacePtr v;
  DerAlgebra der;   // cap 1; flat space = gl(V) with map degrees
  LInftyStructure structure;

  explicit GlAlgebra(SpacePtr v_space, int cap = 2);
  /// Index of E_ij : v_j -> v_i in the flat basis.
  int unit_index(int i, int j) const;
};

/// A representation is a morphism into gl(V); this delegates to
/// check_morphism.
CheckItem representation_check_item(const LInftyMorphism& rho,
                                    const std::string& name);

}  // namespace linfty
