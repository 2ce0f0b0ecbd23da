#include "linfty/morphism.hpp"

#include <sstream>
#include <stdexcept>

namespace linfty {

LInftyMorphism::LInftyMorphism(const LInftyStructure& src,
                               const LInftyStructure& dst)
    : source(&src), target(&dst), cap(std::min(src.cap, dst.cap)) {
  f.reserve(cap);
  for (int k = 1; k <= cap; ++k)
    f.emplace_back(src.shifted, dst.shifted, k, 0);
}

LInftyMorphism identity_morphism(const LInftyStructure& s) {
  LInftyMorphism F(s, s);
  for (int i = 0; i < s.shifted->dim(); ++i)
    F.comp(1).add_entry({i}, Element::basis(s.shifted, i));
  return F;
}

Element morphism_lhs(const LInftyMorphism& F, int n, const Monomial& mono) {
  const GradedSpace& w = *F.source->shifted;
  std::vector<int> deg(mono.size());
  for (std::size_t i = 0; i < mono.size(); ++i) deg[i] = w.degree(mono[i]);
  Element out = Element::zero(F.target->shifted);
  for (int i = 1; i <= n; ++i) {
    const int outer = n - i + 1;
    if (i > F.source->cap || outer > F.cap) continue;
    for (const auto& sigma : unshuffles(i, n)) {
      const int eps = koszul_sign(sigma, deg);
      Monomial first(i), rest(n - i);
      for (int k = 0; k < i; ++k) first[k] = mono[sigma[k]];
      for (int k = i; k < n; ++k) rest[k - i] = mono[sigma[k]];
      Element inner = F.source->bracket(i).eval_basis(first);
      if (inner.is_zero()) continue;
      out.add_scaled(eps, F.comp(outer).eval_first(inner, rest));
    }
  }
  return out;
}

Element morphism_rhs(const LInftyMorphism& F, int n, const Monomial& mono) {
  const GradedSpace& w = *F.source->shifted;
  std::vector<int> deg(mono.size());
  for (std::size_t i = 0; i < mono.size(); ++i) deg[i] = w.degree(mono[i]);
  Element out = Element::zero(F.target->shifted);

  // ordered compositions (k_1,...,k_j) of n with k_a >= 1
  std::vector<int> comp_sizes;
  std::function<void(int)> comps = [&](int remaining) {
    if (remaining == 0) {
      const int j = static_cast<int>(comp_sizes.size());
      if (j > F.target->cap) return;
      bool feasible = true;
      for (int k : comp_sizes)
        if (k > F.cap) feasible = false;
      if (!feasible) return;
      const Rat inv_jfact = Rat(1) / factorial(j);
      for_each_block_unshuffle(comp_sizes, [&](const std::vector<int>& seq) {
        const int eps = koszul_sign(seq, deg);
        // evaluate the f-blocks
        std::vector<Element> values;
        values.reserve(j);
        int pos = 0;
        for (int k : comp_sizes) {
          Monomial block(k);
          for (int t = 0; t < k; ++t) block[t] = mono[seq[pos + t]];
          pos += k;
          values.push_back(F.comp(k).eval_basis(block));
        }
        Element term = F.target->bracket(j).eval(values);
        Rat c = inv_jfact * eps;
        out.add_scaled(c, term);
      });
      return;
    }
    for (int k = 1; k <= remaining; ++k) {
      comp_sizes.push_back(k);
      comps(remaining - k);
      comp_sizes.pop_back();
    }
  };
  comps(n);
  return out;
}

MorphismCheck check_morphism(const LInftyMorphism& F) {
  MorphismCheck r;
  const int n_max = F.cap;
  for (int n = 1; n <= n_max; ++n) {
    r.checked_arities.push_back(n);
    for (const auto& mono : monomials_of_length(*F.source->shifted, n)) {
      Element lhs = morphism_lhs(F, n, mono);
      Element rhs = morphism_rhs(F, n, mono);
      lhs -= rhs;
      if (!lhs.is_zero()) {
        r.pass = false;
        r.violation = RelationViolation{n, mono, std::move(lhs)};
        return r;
      }
    }
  }
  return r;
}

CheckItem check_morphism_item(const LInftyMorphism& F,
                              const std::string& name) {
  auto c = check_morphism(F);
  CheckItem item;
  item.name = name;
  item.pass = c.pass;
  std::ostringstream os;
  os << "morphism relation checked for arities 1.." << F.cap;
  item.details.push_back(os.str());
  if (c.violation) {
    std::ostringstream v;
    v << "violated at arity " << c.violation->arity << " on monomial "
      << monomial_str(c.violation->mono, *F.source->shifted) << ", residual "
      << c.violation->residual.str();
    item.details.push_back(v.str());
  }
  return item;
}

Element mc_pushforward(const LInftyMorphism& F, const Element& xi,
                       const Truncation& cert) {
  Element res = mc_residual(*F.source, xi, cert);
  if (!res.is_zero())
    throw std::invalid_argument("mc_pushforward: source element is not MC");
  // same multiset expansion as mc_residual_series, over the f-components
  Element out = Element::zero(F.target->shifted);
  std::vector<int> support;
  for (const auto& [i, c] : xi.terms()) support.push_back(i);
  Monomial mono;
  std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t start,
                                                         const Rat& coeff) {
    const int k = static_cast<int>(mono.size());
    if (k >= 1 && k <= F.cap && !F.comp(k).is_zero()) {
      Rat c = coeff / monomial_automorphisms(mono);
      out.add_scaled(c, F.comp(k).eval_basis(mono));
    }
    if (k == F.cap) return;
    for (std::size_t j = start; j < support.size(); ++j) {
      mono.push_back(support[j]);
      Rat c = coeff * xi.coeff(support[j]);
      rec(j, c);
      mono.pop_back();
    }
  };
  rec(0, Rat(1));
  return out;
}

GlAlgebra::GlAlgebra(SpacePtr v_space, int cap)
    : v(v_space),
      der(v_space, 1, "gl(" + v_space->base_name() + ")"),
      structure(der.flat(), cap) {
  const SpacePtr& gl = der.flat();
  const SpacePtr& gl1 = structure.shifted;
  // m2(a[1], b[1]) = (-1)^{|a|} [a,b][1], commutator bracket
  for (int i = 0; i < gl->dim(); ++i) {
    for (int j = i; j < gl->dim(); ++j) {
      if (i == j && (gl1->degree(i) & 1)) continue;
      Element br = der.bracket(Element::basis(gl, i), Element::basis(gl, j));
      if (br.is_zero()) continue;
      Element val = shift_element(br, 1);
      if (gl->degree(i) & 1) val.scale(-1);
      structure.bracket(2).add_entry({i, j}, val);
    }
  }
}

int GlAlgebra::unit_index(int i, int j) const {
  return der.flat_index({j}, i);
}

CheckItem representation_check_item(const LInftyMorphism& rho,
                                    const std::string& name) {
  return check_morphism_item(rho, name);
}

}  // namespace linfty
