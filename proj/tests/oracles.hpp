#pragma once

// Test-side oracles, independent of the library's composite machinery.
// These expand definitions directly from structure constants.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "linfty/linfty_structure.hpp"

namespace oracles {

using namespace linfty;

// -- inverse decalage accessors on basis elements ---------------------------

inline Element ob_diff(const LInftyStructure& s, int i) {
  Element v = s.bracket(1).eval_basis({i});
  Element out = shift_element(v, -1);
  out.scale(-1);  // m1(x[1]) = -(dx)[1]
  return out;
}

inline Element ob_bracket(const LInftyStructure& s, int i, int j) {
  Element v = s.bracket(2).eval_basis({i, j});
  Element out = shift_element(v, -1);
  if (s.space->degree(i) & 1) out.scale(-1);  // m2 = (-1)^{|x|}[x,y][1]
  return out;
}

inline Element lin_diff(const LInftyStructure& s, const Element& x) {
  Element out = Element::zero(s.space);
  for (const auto& [i, c] : x.terms()) out.add_scaled(c, ob_diff(s, i));
  return out;
}

inline Element lin_bracket(const LInftyStructure& s, const Element& x,
                           const Element& y) {
  Element out = Element::zero(s.space);
  for (const auto& [i, ci] : x.terms())
    for (const auto& [j, cj] : y.terms()) {
      Rat c = ci * cj;
      out.add_scaled(c, ob_bracket(s, i, j));
    }
  return out;
}

/// Brute-force oracle: a structure with components <= 2 is a dgla iff
/// d^2 = 0, Leibniz and graded Jacobi hold on all basis tuples.
inline bool dgla_oracle(const LInftyStructure& s) {
  const int n = s.space->dim();
  auto deg = [&](int i) { return s.space->degree(i); };
  for (int i = 0; i < n; ++i)
    if (!lin_diff(s, ob_diff(s, i)).is_zero()) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // antisymmetry comes with the symmetric shifted storage; check anyway
      Element sym = ob_bracket(s, i, j);
      Element ji = ob_bracket(s, j, i);
      sym.add_scaled(((deg(i) & 1) && (deg(j) & 1)) ? -1 : 1, ji);
      if (!sym.is_zero()) return false;
      // Leibniz: d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]
      Element lhs = lin_diff(s, ob_bracket(s, i, j));
      Element rhs = lin_bracket(s, ob_diff(s, i), Element::basis(s.space, j));
      Element second =
          lin_bracket(s, Element::basis(s.space, i), ob_diff(s, j));
      rhs.add_scaled((deg(i) & 1) ? -1 : 1, second);
      rhs.add_scaled(-1, lhs);
      if (!rhs.is_zero()) return false;
      for (int k = 0; k < n; ++k) {
        // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
        Element l =
            lin_bracket(s, Element::basis(s.space, i), ob_bracket(s, j, k));
        Element r =
            lin_bracket(s, ob_bracket(s, i, j), Element::basis(s.space, k));
        Element mid =
            lin_bracket(s, Element::basis(s.space, j), ob_bracket(s, i, k));
        r.add_scaled(((deg(i) & 1) && (deg(j) & 1)) ? -1 : 1, mid);
        r.add_scaled(-1, l);
        if (!r.is_zero()) return false;
      }
    }
  return true;
}

// -- standard small structures ----------------------------------------------

inline LInftyStructure sl2_structure(int cap, const Rat& he = 2,
                                     const Rat& hf = -2, const Rat& ef = 1) {
  auto g = make_space("sl2", {{"e", 0}, {"f", 0}, {"h", 0}});
  LInftyStructure s(g, cap);
  auto add = [&](int i, int j, int t, const Rat& c) {
    Element v = Element::zero(s.shifted);
    v.add_term(t, c);
    s.bracket(2).add_entry({i, j}, v);
  };
  add(2, 0, 0, he);
  add(2, 1, 1, hf);
  add(0, 1, 2, ef);
  return s;
}

inline LInftyStructure aff1_structure(int cap, const Rat& xy = 1) {
  auto g = make_space("aff1", {{"x", 0}, {"y", 0}});
  LInftyStructure s(g, cap);
  Element v = Element::zero(s.shifted);
  v.add_term(1, xy);
  s.bracket(2).add_entry({0, 1}, v);
  return s;
}

/// Random degree-1 component tables on a random graded space; usually not
/// a dgla, which is the point for equivalence testing.
inline LInftyStructure random_two_table(std::mt19937& rng, int dim, int cap) {
  std::uniform_int_distribution<int> dd(-1, 2);
  std::uniform_int_distribution<int> cc(-2, 2);
  std::vector<std::pair<std::string, int>> basis;
  for (int i = 0; i < dim; ++i)
    basis.emplace_back("u" + std::to_string(i), dd(rng));
  auto g = make_space("rand", std::move(basis));
  LInftyStructure s(g, cap);
  for (int k = 1; k <= 2; ++k) {
    for (const auto& mono : monomials_of_length(*s.shifted, k)) {
      const int want = monomial_degree(mono, *s.shifted) + 1;
      Element v = Element::zero(s.shifted);
      for (int t = 0; t < g->dim(); ++t)
        if (s.shifted->degree(t) == want && cc(rng) > 0)
          v.add_term(t, cc(rng));
      if (!v.is_zero()) s.bracket(k).add_entry(mono, v);
    }
  }
  return s;
}

/// Lie-algebra structures drawn from a small pool that genuinely satisfy
/// the axioms (used where a true dgla is required).
inline LInftyStructure random_true_dgla(std::mt19937& rng, int cap) {
  std::uniform_int_distribution<int> pick(0, 3);
  switch (pick(rng)) {
    case 0:
      return sl2_structure(cap);
    case 1:
      return aff1_structure(cap);
    case 2: {  // heisenberg: [p,q] = z
      auto g = make_space("heis", {{"p", 0}, {"q", 0}, {"z", 0}});
      LInftyStructure s(g, cap);
      Element v = Element::zero(s.shifted);
      v.add_term(2, 1);
      s.bracket(2).add_entry({0, 1}, v);
      return s;
    }
    default: {  // graded abelian with a differential: d(a) = b
      auto g = make_space("dg", {{"a", 0}, {"b", 1}});
      LInftyStructure s(g, cap);
      Element v = Element::zero(s.shifted);
      v.add_term(1, -1);  // m1(a[1]) = -(da)[1]
      s.bracket(1).add_entry({0}, v);
      return s;
    }
  }
}

}  // namespace oracles
