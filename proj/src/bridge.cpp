#include "linfty/bridge.hpp"

#include <sstream>
#include <stdexcept>

namespace linfty {

namespace {

SpacePtr dual_space(const SpacePtr& g, int n) {
  std::vector<std::pair<std::string, int>> basis;
  for (int i = 0; i < g->dim(); ++i)
    basis.emplace_back(g->symbol(i) + "*", 2 - n - g->degree(i));
  return make_space(g->base_name() + "*[n-2]", std::move(basis));
}

/// Sign of the dictionary between bracket values {p, s} and derivation
/// entries: fixed by requiring H(D_n(m)) to restrict to m on the g-block
/// and H to preserve brackets. Includes the internal pair sign of the
/// result monomial (dualization reads it in the opposite order).
int hamiltonian_sign(const GradedSpace& gens, const Monomial& mono,
                     int gen_deg, int nshift) {
  int g = 0, internal = 0;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    const int di = gens.degree(mono[i]) & 1;
    internal ^= g & di;
    g ^= di;
  }
  const int d = gen_deg & 1, n = nshift & 1;
  const int e = (g & d) ^ (n & (g ^ d)) ^ d ^ internal;
  return e ? 1 : -1;  // -(-1)^e
}

}  // namespace

BridgeContext::BridgeContext(SpacePtr g, int n, int wcap, int cap)
    : pctx(std::make_shared<const PoissonContext>(g, n, wcap)),
      vdual(dual_space(g, n)),
      rb(std::make_shared<RbContext>(g, vdual, cap)) {}

DerivationRep hamiltonian(const BridgeContext& bc, const PoissonPoly& p) {
  const PoissonContext& ctx = *bc.pctx;
  const int d = ctx.dim();
  for (const auto& [mono, c] : p.terms)
    if (static_cast<int>(mono.size()) < 2)
      throw std::invalid_argument(
          "hamiltonian: implemented on the weight >= 2 block");
  auto pdeg = p.degree();
  if (p.is_zero()) return DerivationRep(bc.rb->w, 0, bc.rb->cap);
  if (!pdeg) throw std::invalid_argument("hamiltonian: inhomogeneous input");
  // the derivation has the shifted (Lie) degree of p
  DerivationRep out(bc.rb->w, *pdeg, bc.rb->cap);
  for (int gi = 0; gi < 2 * d; ++gi) {
    PoissonPoly gen(bc.pctx);
    gen.add_term({gi}, 1);
    PoissonPoly der = poisson_bracket(p, gen);
    const int out_idx = ctx.is_xi(gi) ? gi : d + (gi - d);
    const int gen_deg = ctx.gens->degree(gi);
    for (const auto& [mono, c] : der.terms) {
      Monomial key;
      key.reserve(mono.size());
      for (int i : mono) key.push_back(ctx.is_xi(i) ? i : d + (i - d));
      const int arity = static_cast<int>(key.size());
      if (arity < 1 || arity > bc.rb->cap)
        throw std::out_of_range(
            "hamiltonian: component arity outside the cap");
      Rat coeff = c * monomial_automorphisms(mono);
      coeff *= hamiltonian_sign(*ctx.gens, mono, gen_deg, bc.n());
      Element val = Element::zero(bc.rb->w);
      val.add_term(out_idx, coeff);
      out.comp(arity).add_entry(key, val);
    }
  }
  return out;
}

HLRPair coadjoint(const BridgeContext& bc, const LInftyStructure& m) {
  if (!check_linfty(m).pass)
    throw std::invalid_argument("coadjoint: input fails check_linfty");
  PoissonPoly dm = double_map(bc.pctx, m.m);
  DerivationRep h = hamiltonian(bc, dm);
  const RbContext& ctx = *bc.rb;
  HLRPair pair(ctx, m);

  DerivationRep expected_m(ctx.w, 1, ctx.cap);
  for (int k = 1; k <= m.cap; ++k)
    for (const auto& [mono, val] : m.bracket(k).entries()) {
      Element wval = Element::zero(ctx.w);
      for (const auto& [t, c] : val.terms()) wval.add_term(t, c);
      expected_m.comp(k).add_entry(mono, wval);
    }

  const int gd = ctx.g_dim();
  DerivationRep got_m(ctx.w, 1, ctx.cap);
  for (int k = 1; k <= ctx.cap; ++k) {
    for (const auto& [mono, val] : h.comp(k).entries()) {
      for (const auto& [t, c] : val.terms()) {
        int v_in = 0;
        for (int i : mono)
          if (!ctx.is_g_index(i)) ++v_in;
        const bool v_out = !ctx.is_g_index(t);
        Element single = Element::zero(ctx.w);
        single.add_term(t, c);
        if (v_in == 0 && !v_out) {
          got_m.comp(k).add_entry(mono, single);
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
          pair.rho_comp(k - 1).add_entry(gmono, glval);
        } else {
          throw std::logic_error(
              "coadjoint: image escaped the hlr blocks (monomial " +
              monomial_str(mono, *ctx.w) + ")");
        }
      }
    }
  }
  if (!(got_m == expected_m))
    throw std::logic_error(
        "coadjoint: derivation block does not reproduce the input structure");
  return pair;
}

RmatrixToRbResult rmatrix_to_rb(const BridgeContext& bc,
                                const LInftyStructure& m,
                                const PoissonPoly& r) {
  auto rm = check_rmatrix(m, r);
  if (!rm.pass)
    throw std::invalid_argument("rmatrix_to_rb: r fails check_rmatrix");
  const RbContext& ctx = *bc.rb;
  RmatrixToRbResult out{RBOperator(ctx), {}};
  if (!r.is_zero()) {
    DerivationRep h = hamiltonian(bc, r);
    const int gd = ctx.g_dim();
    for (int k = 1; k <= ctx.cap; ++k) {
      for (const auto& [mono, val] : h.comp(k).entries()) {
        Monomial vkey;
        for (int i : mono) {
          if (ctx.is_g_index(i))
            throw std::logic_error("rmatrix_to_rb: image outside the h block");
          vkey.push_back(i - gd);
        }
        Element gval = Element::zero(ctx.g1);
        for (const auto& [t, c] : val.terms()) {
          if (!ctx.is_g_index(t))
            throw std::logic_error("rmatrix_to_rb: image outside the h block");
          gval.add_term(t, c);
        }
        out.t.t_comp(k).add_entry(vkey, gval);
      }
    }
  }
  HLRPair phi = coadjoint(bc, m);
  out.certificate = check_rb_operator(ctx, phi, out.t);
  return out;
}

namespace {

/// The blockwise strict map from the lhm structure to the lhrb structure:
/// H o D_n on the Der part, H on the h part.  Images of the source basis
/// are precomputed once.
struct BridgeMap {
  const DerivedBrackets* lhrb;
  std::vector<Element> images;

  Element apply(const Element& x) const {
    Element out(lhrb->structure.shifted);
    for (const auto& [slot, c] : x.terms())
      out.add_scaled(c, images.at(slot));
    return out;
  }
};

BridgeMap make_bridge_map(const BridgeContext& bc, const LhmStructure& lhm,
                          const RbContext& ctx, const DerivedBrackets& lhrb) {
  BridgeMap psi{&lhrb, {}};
  // flat Der index -> slot of the lhrb structure
  std::map<int, int> slot_of;
  for (int k = 0; k < lhrb.l_count; ++k)
    slot_of[lhrb.lprime_basis[k].terms().begin()->first] = k;
  for (std::size_t k = 0; k < lhrb.h_basis.size(); ++k)
    slot_of[lhrb.h_basis[k].terms().begin()->first] =
        lhrb.l_count + static_cast<int>(k);

  const int dim = lhm.brackets.structure.shifted->dim();
  psi.images.reserve(dim);
  for (int slot = 0; slot < dim; ++slot) {
    PoissonPoly poly(bc.pctx);
    if (slot < lhm.brackets.l_count)
      poly.add_term(lhm.lprime_monos.at(slot), 1);
    else
      poly.add_term(lhm.h_monos.at(slot - lhm.brackets.l_count), 1);
    Element flat = ctx.der.flatten(hamiltonian(bc, poly));
    Element out(lhrb.structure.shifted);
    for (const auto& [fi, fc] : flat.terms()) {
      auto it = slot_of.find(fi);
      if (it == slot_of.end())
        throw std::logic_error("bridge map: image outside the lhrb blocks");
      out.add_term(it->second, fc);
    }
    psi.images.push_back(std::move(out));
  }
  return psi;
}

}  // namespace

Report check_bridge_diagram(const BridgeContext& bc, const LInftyStructure& m,
                            const PoissonPoly& r) {
  Report rep;
  rep.command = "check-bridge";
  rep.arity_cap = bc.rb->cap;
  rep.weight_cap = bc.pctx->wcap;
  rep.shift = bc.n();

  LhmStructure lhm = build_lhm(bc.pctx, bc.rb->cap);
  DerivedBrackets lhrb = build_lhrb(*bc.rb);
  const int cap = bc.rb->cap;
  const SpacePtr& src = lhm.brackets.structure.shifted;

  BridgeMap map = make_bridge_map(bc, lhm, *bc.rb, lhrb);
  auto psi = [&](const Element& x) { return map.apply(x); };

  // (a) column consistency: the map restricted to each block stays in the
  // matching block of the target.
  CheckItem cols{"block-columns"};
  for (int i = 0; i < src->dim(); ++i) {
    Element im = psi(Element::basis(src, i));
    const bool src_l = i < lhm.brackets.l_count;
    for (const auto& [j, c] : im.terms()) {
      const bool dst_l = j < lhrb.l_count;
      if (src_l != dst_l) {
        cols.pass = false;
        cols.details.push_back("block mixed at " + src->symbol(i));
      }
    }
  }
  rep.add(cols);

  // (b) intertwining of every product shape of arity <= cap
  CheckItem inter{"product-intertwining"};
  long long shapes = 0;
  for (int k = 1; k <= cap && inter.pass; ++k) {
    for (const auto& mono : monomials_of_length(*src, k)) {
      Element lhs = psi(lhm.brackets.structure.bracket(k).eval_basis(mono));
      std::vector<Element> args;
      args.reserve(k);
      for (int idx : mono) args.push_back(psi(Element::basis(src, idx)));
      Element rhs = lhrb.structure.bracket(k).eval(args);
      ++shapes;
      if (!(lhs == rhs)) {
        inter.pass = false;
        std::ostringstream os;
        os << "mismatch at arity " << k << " on " << monomial_str(mono, *src)
           << ": image-of-product " << lhs.str() << " vs product-of-images "
           << rhs.str();
        inter.details.push_back(os.str());
        break;
      }
    }
  }
  inter.details.push_back("product shapes compared: " +
                          std::to_string(shapes));
  rep.add(inter);

  // (c) MC transport of the given pair
  CheckItem mc{"mc-transport"};
  auto rm = check_rmatrix(m, r);
  if (rm.pass) {
    Element xi = lhm.element_of(m.m, r);
    const bool src_mc = mc_residual_series(lhm.brackets.structure, xi).is_zero();
    Element image = psi(xi);
    const bool dst_mc =
        mc_residual_series(lhrb.structure, image).is_zero();
    mc.pass = src_mc && dst_mc;
    mc.details.push_back(std::string("source MC: ") +
                         (src_mc ? "yes" : "no") + ", image MC: " +
                         (dst_mc ? "yes" : "no"));
  } else {
    mc.details.push_back("input r is not an r-matrix; transport skipped");
  }
  rep.add(mc);
  return rep;
}

}  // namespace linfty
