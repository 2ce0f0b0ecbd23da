#pragma once

#include "linfty/morphism.hpp"

namespace linfty {

/// A finite nilpotent piece of a complete cdga: basis index 0 is the unit,
/// indices >= 1 span the maximal ideal, and (ideal)^nu = 0. Multiplication
/// and differential are validated by validate(), never assumed.
struct NilpotentCdga {
  SpacePtr space;                           // unit first
  std::vector<std::vector<Element>> mult;   // mult[i][j] = a_i a_j
  std::vector<Element> diff;                // d a_i
  int nu;

  Element unit() const { return Element::basis(space, 0); }
  Element mul(const Element& a, const Element& b) const;
  Element d(const Element& a) const;
  int ideal_dim() const { return space->dim() - 1; }

  /// Checks graded commutativity, associativity, unit, d^2 = 0, the
  /// Leibniz rule and (ideal)^nu = 0 by explicit powering. Throws on the
  /// first failure.
  void validate() const;
};

NilpotentCdga dual_numbers(int eps_degree = 0);    // k[e]/(e^2)
NilpotentCdga truncated_poly(int power, int t_degree = 0);  // k[t]/(t^power)
/// k<t,s>/(t^power, s^2, ts) with |s| = |t| + 1, dt = s: an acyclic ideal.
NilpotentCdga contractible_cdga(int power, int t_degree = 0);

/// A map of cdgas A -> B: unit to unit, determined by images of basis
/// elements; multiplicativity and d-compatibility are validated.
struct CdgaMorphism {
  const NilpotentCdga* a;
  const NilpotentCdga* b;
  std::vector<Element> image;  // image[i] in B for basis a_i

  Element apply(const Element& x) const;
  void validate() const;
};

/// The extended structure on ideal(A) (x) g with
///   m^A_1(a (x) x) = d_A a (x) x + (-1)^{|a|} a (x) m_1 x
///   m^A_n(a_1 (x) x_1, ...) = (-1)^{sum |a_i|(|x_1|+..+|x_{i-1}|+1)}
///                              (a_1..a_n) (x) m_n(x_1,..,x_n)
struct ExtendedStructure {
  LInftyStructure structure;       // on ideal(A) (x) g
  SpacePtr base_space;             // g
  const NilpotentCdga* cdga;
  std::vector<std::pair<int, int>> basis_pairs;  // (A index >= 1, g index)
  int pair_index(int ai, int gi) const;
};

ExtendedStructure extend_scalars(const LInftyStructure& s,
                                 const NilpotentCdga& a);

/// Component extension of a morphism, prefactor without the "+1".
LInftyMorphism extend_morphism(const LInftyMorphism& f,
                               const ExtendedStructure& src,
                               const ExtendedStructure& dst);

/// Strict map ideal(A) (x) g -> ideal(B) (x) g induced by a cdga morphism.
LInftyMorphism change_of_scalars(const CdgaMorphism& phi,
                                 const ExtendedStructure& src,
                                 const ExtendedStructure& dst);

}  // namespace linfty
