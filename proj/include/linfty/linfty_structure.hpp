#pragma once

#include <functional>

#include "linfty/derivation.hpp"
#include "linfty/report.hpp"

namespace linfty {

/// An L-infinity structure: degree +1 multibrackets m_k on g[1], arities
/// 1..cap. The generalized Jacobi relations are checked, never assumed.
struct LInftyStructure {
  SpacePtr space;   // underlying space g
  SpacePtr shifted; // g[1]
  DerivationRep m;  // components on shifted, common degree +1
  int cap;

  LInftyStructure(SpacePtr g, int cap_);
  MultiMap& bracket(int k) { return m.comp(k); }
  const MultiMap& bracket(int k) const { return m.comp(k); }
};

LInftyStructure make_abelian(SpacePtr g, int cap);

/// Shifted presentation of a dgla:
///   m1(x[1]) = -(dx)[1],  m2(x[1],y[1]) = (-1)^{|x|} [x,y][1].
/// bracket/diff take unshifted basis indices.
LInftyStructure dgla_structure(
    SpacePtr l, const std::function<Element(int, int)>& bracket_basis,
    const std::function<Element(int)>& diff_basis, int cap);

/// Inverse decalage accessors for structures with components <= 2.
Element dgla_bracket_of(const LInftyStructure& s, const Element& x,
                        const Element& y);
Element dgla_diff_of(const LInftyStructure& s, const Element& x);

/// Value of the generalized Jacobi relation of arity n on a basis
/// monomial of S^n(g[1]):
///   sum_i sum_{sigma in Sh(i,n-i)} eps(sigma)
///     m_{n-i+1}(m_i(x_sigma...), x_sigma...).
Element linfty_relation(const LInftyStructure& s, int n, const Monomial& mono);

struct RelationViolation {
  int arity;
  Monomial mono;
  Element residual;
};

struct LInftyCheck {
  bool pass = true;
  std::vector<int> checked_arities;
  std::optional<RelationViolation> violation;
};

LInftyCheck check_linfty(const LInftyStructure& s);

CheckItem check_linfty_item(const LInftyStructure& s, const std::string& name);

/// Truncation certificates under which MC series are finite sums. The
/// engine refuses MC computations without one.
struct Truncation {
  enum class Kind {
    DglaOnly,      // components vanish above arity 2
    Nilpotent,     // coefficients in a nilpotent ideal, bound = index
    WeightBound,   // weight-graded structure, series dies past the bound
  };
  Kind kind;
  int bound;  // arity beyond which terms provably vanish
};

/// sum_{k>=1} 1/k! m_k(xi,...,xi) for a degree-0 element xi of g[1].
/// Throws when the certificate cannot guarantee a finite sum within cap.
Element mc_residual(const LInftyStructure& s, const Element& xi,
                    const Truncation& cert);

/// Raw series bounded by the structure cap; used where finiteness is
/// already structural (all derived-bracket algebras).
Element mc_residual_series(const LInftyStructure& s, const Element& xi);

}  // namespace linfty
