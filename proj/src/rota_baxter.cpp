#include "linfty/rota_baxter.hpp"

#include <sstream>
#include <stdexcept>

namespace linfty {

namespace {

SpacePtr combined_shifted(const SpacePtr& g, const SpacePtr& v) {
  std::vector<std::pair<std::string, int>> basis;
  for (int i = 0; i < g->dim(); ++i)
    basis.emplace_back(g->symbol(i), g->degree(i) - 1);
  for (int i = 0; i < v->dim(); ++i)
    basis.emplace_back(v->symbol(i), v->degree(i) - 1);
  return make_space("(" + g->base_name() + "+" + v->base_name() + ")[1]",
                    std::move(basis));
}

}  // namespace

RbContext::RbContext(SpacePtr g_, SpacePtr v_, int cap_)
    : g(std::move(g_)),
      v(std::move(v_)),
      g1(shift_space(g, 1)),
      v1(shift_space(v, 1)),
      w(combined_shifted(g, v)),
      cap(cap_),
      der(w, cap_, "Der(" + g->base_name() + "+" + v->base_name() + ")"),
      gl(v1, 2) {
  for (int i = 0; i < g->dim(); ++i)
    if (v->index_of(g->symbol(i)) >= 0)
      throw std::invalid_argument("g and V share the basis symbol '" +
                                  g->symbol(i) + "'");
}

RbContext::Block RbContext::block_of(int flat_idx) const {
  const auto& [mono, out] = der.meta(flat_idx);
  int v_in = 0;
  for (int i : mono)
    if (!is_g_index(i)) ++v_in;
  const bool v_out = !is_g_index(out);
  const int g_in = static_cast<int>(mono.size()) - v_in;
  if (v_in == 0 && !v_out) return Block::MType;
  if (v_in == 1 && v_out && g_in >= 1) return Block::RhoType;
  if (g_in == 0 && v_in >= 1 && !v_out) return Block::HType;
  return Block::Other;
}

HLRPair::HLRPair(const RbContext& c, LInftyStructure m_)
    : ctx(&c), m(std::move(m_)) {
  if (!same_space(m.space, c.g))
    throw std::invalid_argument("HLRPair: structure not on g");
  rho.reserve(c.cap - 1);
  for (int k = 1; k <= c.cap - 1; ++k)
    rho.emplace_back(c.g1, c.gl.der.flat(), k, 1);
}

RBOperator::RBOperator(const RbContext& c) : ctx(&c) {
  comp.reserve(c.cap);
  for (int k = 1; k <= c.cap; ++k) comp.emplace_back(c.v1, c.g1, k, 0);
}

HlrElement::HlrElement(const RbContext& c, int degree_)
    : ctx(&c), q(c.g1, degree_, c.cap), degree(degree_) {
  r.reserve(c.cap - 1);
  for (int k = 1; k <= c.cap - 1; ++k)
    r.emplace_back(c.g1, c.gl.der.flat(), k, degree_);
}

bool HlrElement::is_zero() const {
  if (!q.is_zero()) return false;
  for (const auto& c : r)
    if (!c.is_zero()) return false;
  return true;
}

HlrElement& HlrElement::add_scaled(const Rat& c, const HlrElement& o) {
  q.add_scaled(c, o.q);
  for (std::size_t k = 0; k < r.size(); ++k) r[k].add_scaled(c, o.r[k]);
  return *this;
}

HlrElement hlr_from_pair(const HLRPair& phi) {
  HlrElement e(*phi.ctx, 1);
  e.q.add_scaled(1, phi.m.m);
  for (std::size_t k = 0; k < phi.rho.size(); ++k)
    e.r[k].add_scaled(1, phi.rho[k]);
  return e;
}

DerivationRep embed_hlr(const HlrElement& e) {
  const RbContext& ctx = *e.ctx;
  DerivationRep out(ctx.w, e.degree, ctx.cap);
  const int gd = ctx.g_dim();
  // Der part: g-indices coincide in W
  for (int k = 1; k <= ctx.cap; ++k) {
    for (const auto& [mono, val] : e.q.comp(k).entries()) {
      Element wval = Element::zero(ctx.w);
      for (const auto& [t, c] : val.terms()) wval.add_term(t, c);
      out.comp(k).add_entry(mono, wval);
    }
  }
  // rho part: component on (g-monomial, v_j) with value rho(x...)(v_j)
  for (int k = 1; k <= ctx.cap - 1; ++k) {
    for (const auto& [mono, val] : e.r[k - 1].entries()) {
      for (const auto& [glidx, c] : val.terms()) {
        const auto& [vmono, vout] = ctx.gl.der.meta(glidx);
        Monomial key = mono;
        key.push_back(gd + vmono[0]);  // sorted: V index after g indices
        Element wval = Element::zero(ctx.w);
        wval.add_term(gd + vout, c);
        out.comp(k + 1).add_entry(key, wval);
      }
    }
  }
  return out;
}

DerivationRep embed_rb(const RBOperator& t) {
  const RbContext& ctx = *t.ctx;
  DerivationRep out(ctx.w, 0, ctx.cap);
  const int gd = ctx.g_dim();
  for (int k = 1; k <= ctx.cap; ++k) {
    for (const auto& [mono, val] : t.comp[k - 1].entries()) {
      Monomial key;
      key.reserve(mono.size());
      for (int i : mono) key.push_back(gd + i);
      Element wval = Element::zero(ctx.w);
      for (const auto& [gidx, c] : val.terms()) wval.add_term(gidx, c);
      out.comp(k).add_entry(key, wval);
    }
  }
  return out;
}

DerivationRep project_h(const RbContext& ctx, const DerivationRep& d) {
  DerivationRep out(ctx.w, d.degree(), d.cap());
  for (int k = 1; k <= d.cap(); ++k) {
    for (const auto& [mono, val] : d.comp(k).entries()) {
      bool all_v = true;
      for (int i : mono)
        if (ctx.is_g_index(i)) all_v = false;
      if (!all_v) continue;
      Element gval = Element::zero(ctx.w);
      for (const auto& [t, c] : val.terms())
        if (ctx.is_g_index(t)) gval.add_term(t, c);
      if (!gval.is_zero()) out.comp(k).add_entry(mono, gval);
    }
  }
  return out;
}

namespace {

struct HlrSplit {
  HlrElement elem;
  bool clean;  // nothing fell outside the two blocks
};

HlrSplit split_hlr(const RbContext& ctx, const DerivationRep& d) {
  HlrSplit s{HlrElement(ctx, d.degree()), true};
  const int gd = ctx.g_dim();
  for (int k = 1; k <= d.cap(); ++k) {
    for (const auto& [mono, val] : d.comp(k).entries()) {
      int v_in = 0;
      for (int i : mono)
        if (!ctx.is_g_index(i)) ++v_in;
      for (const auto& [t, c] : val.terms()) {
        const bool v_out = !ctx.is_g_index(t);
        if (v_in == 0 && !v_out) {
          Element gval = Element::zero(ctx.g1);
          gval.add_term(t, c);
          s.elem.q.comp(k).add_entry(mono, gval);
        } else if (v_in == 1 && v_out && k >= 2) {
          Monomial gmono;
          int vj = -1;
          for (int i : mono) {
            if (ctx.is_g_index(i))
              gmono.push_back(i);
            else
              vj = i - gd;
          }
          Element glval = Element::zero(ctx.gl.der.flat());
          glval.add_term(ctx.gl.unit_index(t - gd, vj), c);
          s.elem.r[k - 2].add_entry(gmono, glval);
        } else {
          s.clean = false;
        }
      }
    }
  }
  return s;
}

}  // namespace

HlrElement hlr_bracket(const HlrElement& a, const HlrElement& b) {
  DerivationRep br = derivation_bracket(embed_hlr(a), embed_hlr(b));
  auto s = split_hlr(*a.ctx, br);
  if (!s.clean)
    throw std::logic_error("hlr_bracket left the semidirect product blocks");
  return std::move(s.elem);
}

bool hlr_pair_is_mc(const HLRPair& phi) {
  DerivationRep e = embed_hlr(hlr_from_pair(phi));
  return derivation_bracket(e, e).is_zero();
}

VStructureDgla rb_vstructure(const RbContext& ctx, const HLRPair& phi) {
  if (!hlr_pair_is_mc(phi))
    throw std::invalid_argument("rb_vstructure: (m, rho) is not MC");
  VStructureDgla vs;
  const DerAlgebra& der = ctx.der;
  vs.l = der.flat();
  vs.bracket = [&der](const Element& x, const Element& y) {
    return der.bracket(x, y);
  };
  Element phi_flat = der.flatten(embed_hlr(hlr_from_pair(phi)));
  vs.diff = [&der, phi_flat](const Element& x) {
    return der.bracket(phi_flat, x);
  };
  const RbContext* c = &ctx;
  vs.proj = [c, &der](const Element& x) {
    Element out = Element::zero(der.flat());
    for (const auto& [i, coef] : x.terms())
      if (c->block_of(i) == RbContext::Block::HType) out.add_term(i, coef);
    return out;
  };
  vs.weight.resize(der.flat()->dim());
  for (int i = 0; i < der.flat()->dim(); ++i) {
    const auto& [mono, out] = der.meta(i);
    int v_in = 0;
    for (int j : mono)
      if (!ctx.is_g_index(j)) ++v_in;
    vs.weight[i] = 2 * v_in + (ctx.is_g_index(out) ? 1 : 0);
  }
  vs.series_limit = 2 * ctx.cap + 8;
  return vs;
}

RbOperatorReport check_rb_operator(const RbContext& ctx, const HLRPair& phi,
                                   const RBOperator& t) {
  RbOperatorReport rep;
  DerivationRep tw = embed_rb(t);
  DerivationRep term = embed_hlr(hlr_from_pair(phi));
  DerivationRep acc = project_h(ctx, term);
  Rat fact = 1;
  int n = 0;
  while (true) {
    term = derivation_bracket(term, tw);
    if (term.is_zero()) break;
    ++n;
    if (n > 2 * ctx.cap + 8)
      throw std::runtime_error(
          "check_rb_operator: exponential series did not terminate");
    fact *= n;
    DerivationRep p = project_h(ctx, term);
    Rat c = Rat(1) / fact;
    acc.add_scaled(c, p);
  }
  rep.series_terms = n;
  for (int k = 1; k <= ctx.cap; ++k) {
    if (acc.comp(k).is_zero()) continue;
    rep.pass = false;
    Element flatres = Element::zero(ctx.der.flat());
    for (const auto& [mono, val] : acc.comp(k).entries())
      for (const auto& [out, c] : val.terms())
        flatres.add_term(ctx.der.flat_index(mono, out), c);
    rep.residuals.emplace_back(k, std::move(flatres));
  }
  return rep;
}

Element rb_operator_mc_residual(const RbContext& ctx, const HLRPair& phi,
                                const RBOperator& t) {
  auto vs = rb_vstructure(ctx, phi);
  auto small = derived_brackets_small(vs, ctx.cap);
  Element tflat = ctx.der.flatten(embed_rb(t));
  Element tc = small.h_coords(vs, tflat);
  return mc_residual_series(small.structure, tc);
}

DerivedBrackets build_lhrb(const RbContext& ctx) {
  VStructureDgla vs;
  const DerAlgebra& der = ctx.der;
  vs.l = der.flat();
  vs.bracket = [&der](const Element& x, const Element& y) {
    return der.bracket(x, y);
  };
  vs.diff = [&der](const Element&) { return Element::zero(der.flat()); };
  const RbContext* c = &ctx;
  vs.proj = [c, &der](const Element& x) {
    Element out = Element::zero(der.flat());
    for (const auto& [i, coef] : x.terms())
      if (c->block_of(i) == RbContext::Block::HType) out.add_term(i, coef);
    return out;
  };
  vs.weight.assign(der.flat()->dim(), 0);
  for (int i = 0; i < der.flat()->dim(); ++i) {
    const auto& [mono, out] = der.meta(i);
    int v_in = 0;
    for (int j : mono)
      if (!ctx.is_g_index(j)) ++v_in;
    vs.weight[i] = 2 * v_in + (ctx.is_g_index(out) ? 1 : 0);
  }
  vs.series_limit = 2 * ctx.cap + 8;

  std::vector<Element> lprime;
  for (int i = 0; i < der.flat()->dim(); ++i) {
    const auto b = ctx.block_of(i);
    if (b == RbContext::Block::MType || b == RbContext::Block::RhoType)
      lprime.push_back(Element::basis(der.flat(), i));
  }
  return derived_brackets_big(vs, ctx.cap, &lprime);
}

Element lhrb_element(const RbContext& ctx, const DerivedBrackets& lhrb,
                     const HLRPair& phi, const RBOperator& t) {
  Element phi_flat = ctx.der.flatten(embed_hlr(hlr_from_pair(phi)));
  Element t_flat = ctx.der.flatten(embed_rb(t));
  Element out(lhrb.structure.shifted);
  // L' basis vectors are flat coordinate vectors; match them directly.
  for (int k = 0; k < lhrb.l_count; ++k) {
    const auto& terms = lhrb.lprime_basis[k].terms();
    if (terms.size() != 1)
      throw std::logic_error("lhrb_element: unexpected L' basis");
    const int flat_idx = terms.begin()->first;
    const Rat c = phi_flat.coeff(flat_idx);
    if (c != 0) out.add_term(k, c);
  }
  for (std::size_t k = 0; k < lhrb.h_basis.size(); ++k) {
    const auto& terms = lhrb.h_basis[k].terms();
    if (terms.size() != 1)
      throw std::logic_error("lhrb_element: unexpected h basis");
    const int flat_idx = terms.begin()->first;
    const Rat c = t_flat.coeff(flat_idx);
    if (c != 0) out.add_term(lhrb.l_count + static_cast<int>(k), c);
  }
  return out;
}

TripleReport rb_triple_mc_check(const RbContext& ctx, const HLRPair& phi,
                                const RBOperator& t) {
  TripleReport rep;
  auto lhrb = build_lhrb(ctx);
  Element xi = lhrb_element(ctx, lhrb, phi, t);
  rep.mc_route = mc_residual_series(lhrb.structure, xi).is_zero();

  bool comps = check_linfty(phi.m).pass;
  if (comps) {
    LInftyMorphism rho = rho_as_morphism(phi, ctx.gl.structure);
    comps = check_morphism(rho).pass;
  }
  if (comps) comps = check_rb_operator(ctx, phi, t).pass;
  rep.component_route = comps;
  rep.equivalence_holds = (rep.mc_route == rep.component_route);
  return rep;
}

LInftyMorphism rho_as_morphism(const HLRPair& phi,
                               const LInftyStructure& gl_structure) {
  LInftyMorphism f(phi.m, gl_structure);
  for (int k = 1; k <= std::min(f.cap, phi.ctx->cap - 1); ++k) {
    for (const auto& [mono, val] : phi.rho_comp(k).entries()) {
      Element shifted = Element::zero(gl_structure.shifted);
      for (const auto& [i, c] : val.terms()) shifted.add_term(i, c);
      f.comp(k).add_entry(mono, shifted);
    }
  }
  return f;
}

}  // namespace linfty
