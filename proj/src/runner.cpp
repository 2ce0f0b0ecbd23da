#include "linfty/runner.hpp"

#include <sstream>

namespace linfty {

namespace {

int effective_arity(const AlgebraDocument& doc, const RunOptions& opt) {
  int cap = opt.arity_cap.value_or(doc.arity_cap);
  if (cap < 1 || cap > 12)
    throw std::invalid_argument("arity cap must be between 1 and 12");
  return cap;
}

int effective_weight(const AlgebraDocument& doc, const RunOptions& opt) {
  int w = opt.weight_cap.value_or(doc.weight_cap);
  if (w < 2) throw std::invalid_argument("weight cap must be at least 2");
  return w;
}

int effective_shift(const AlgebraDocument& doc, const RunOptions& opt) {
  if (opt.shift) return *opt.shift;
  if (doc.shift) return *doc.shift;
  throw std::invalid_argument("this command needs a shift (document or --shift)");
}

const std::string& primary_space(const AlgebraDocument& doc) {
  return doc.spaces.front().name;
}

}  // namespace

SpacePtr build_space(const AlgebraDocument& doc, const std::string& name) {
  const auto* sp = doc.find_space(name);
  if (!sp) throw std::invalid_argument("unknown space '" + name + "'");
  return make_space(sp->name, sp->basis);
}

LInftyStructure build_structure(const AlgebraDocument& doc,
                                const std::string& space, int cap) {
  SpacePtr g = build_space(doc, space);
  LInftyStructure s(g, cap);
  auto it = doc.brackets.find(space);
  if (it == doc.brackets.end()) return s;  // abelian
  for (const auto& tl : it->second) {
    if (tl.arity > cap)
      throw std::invalid_argument(
          "bracket entry of arity above the cap in space " + space);
    Monomial mono(tl.mono.size());
    for (std::size_t i = 0; i < tl.mono.size(); ++i)
      mono[i] = g->index_of(tl.mono[i]);
    Element val = Element::zero(s.shifted);
    val.add_term(g->index_of(tl.out), tl.coeff);
    s.bracket(tl.arity).add_entry(mono, val);
  }
  return s;
}

namespace {

struct RbSetup {
  std::shared_ptr<RbContext> ctx;
  std::unique_ptr<HLRPair> phi;
  std::unique_ptr<RBOperator> t;
};

RbSetup build_rb_setup(const AlgebraDocument& doc, int cap) {
  if (!doc.rep_spaces)
    throw std::invalid_argument("command needs a representation section");
  RbSetup out;
  LInftyStructure m = build_structure(doc, doc.rep_spaces->first, cap);
  SpacePtr v = build_space(doc, doc.rep_spaces->second);
  out.ctx = std::make_shared<RbContext>(m.space, v, cap);
  out.phi = std::make_unique<HLRPair>(*out.ctx, std::move(m));
  const SpacePtr& g = out.phi->m.space;
  for (const auto& tl : doc.representation) {
    if (tl.arity > cap - 1)
      throw std::invalid_argument("representation arity above cap-1");
    Monomial mono(tl.mono.size());
    for (std::size_t i = 0; i < tl.mono.size(); ++i)
      mono[i] = g->index_of(tl.mono[i]);
    const int vin = v->index_of(tl.slot);
    const int vout = v->index_of(tl.out);
    Element val = Element::zero(out.ctx->gl.der.flat());
    val.add_term(out.ctx->gl.unit_index(vout, vin), tl.coeff);
    out.phi->rho_comp(tl.arity).add_entry(mono, val);
  }
  out.t = std::make_unique<RBOperator>(*out.ctx);
  for (const auto& tl : doc.op) {
    if (tl.arity > cap)
      throw std::invalid_argument("operator arity above the cap");
    Monomial mono(tl.mono.size());
    for (std::size_t i = 0; i < tl.mono.size(); ++i)
      mono[i] = v->index_of(tl.mono[i]);
    Element val = Element::zero(out.ctx->g1);
    val.add_term(g->index_of(tl.out), tl.coeff);
    out.t->t_comp(tl.arity).add_entry(mono, val);
  }
  return out;
}

}  // namespace

PoissonPoly build_rmatrix(const AlgebraDocument& doc,
                          const PoissonCtxPtr& ctx) {
  PoissonPoly r(ctx);
  if (!doc.rmatrix_space) return r;
  const SpacePtr& g = ctx->g;
  for (const auto& rl : doc.rmatrix) {
    Monomial mono(rl.mono.size());
    for (std::size_t i = 0; i < rl.mono.size(); ++i)
      mono[i] = ctx->v(g->index_of(rl.mono[i]));
    r.add_term(mono, rl.coeff);
  }
  return r;
}

namespace {

Report cmd_check_linfty(const AlgebraDocument& doc, const RunOptions& opt) {
  Report rep;
  rep.command = "check-linfty";
  const int cap = effective_arity(doc, opt);
  rep.arity_cap = cap;
  rep.weight_cap = effective_weight(doc, opt);
  LInftyStructure s = build_structure(doc, primary_space(doc), cap);
  auto check = check_linfty(s);
  CheckItem item;
  for (int n : check.checked_arities)
    item.details.push_back("relation class arity=" + std::to_string(n));
  item.name = "generalized-jacobi";
  item.pass = check.pass;
  if (check.violation) {
    std::ostringstream os;
    os << "residual: arity=" << check.violation->arity
       << " monomial=" << monomial_str(check.violation->mono, *s.shifted)
       << " value=(" << check.violation->residual.str() << ")";
    item.details.push_back(os.str());
  }
  rep.add(std::move(item));
  return rep;
}

Report cmd_check_morphism(const AlgebraDocument& doc, const RunOptions& opt) {
  Report rep;
  rep.command = "check-morphism";
  const int cap = effective_arity(doc, opt);
  rep.arity_cap = cap;
  rep.weight_cap = effective_weight(doc, opt);
  if (!doc.morphism_spaces)
    throw std::invalid_argument("document has no morphism section");
  LInftyStructure src =
      build_structure(doc, doc.morphism_spaces->first, cap);
  LInftyStructure dst =
      build_structure(doc, doc.morphism_spaces->second, cap);
  LInftyMorphism f(src, dst);
  for (const auto& tl : doc.morphism) {
    if (tl.arity > f.cap)
      throw std::invalid_argument("morphism arity above the cap");
    Monomial mono(tl.mono.size());
    for (std::size_t i = 0; i < tl.mono.size(); ++i)
      mono[i] = src.space->index_of(tl.mono[i]);
    Element val = Element::zero(dst.shifted);
    val.add_term(dst.space->index_of(tl.out), tl.coeff);
    f.comp(tl.arity).add_entry(mono, val);
  }
  rep.add(check_linfty_item(src, "source-structure"));
  rep.add(check_linfty_item(dst, "target-structure"));
  rep.add(check_morphism_item(f, "morphism-relation"));
  return rep;
}

Report cmd_check_rb(const AlgebraDocument& doc, const RunOptions& opt) {
  Report rep;
  rep.command = "check-rb";
  const int cap = effective_arity(doc, opt);
  rep.arity_cap = cap;
  rep.weight_cap = effective_weight(doc, opt);
  auto setup = build_rb_setup(doc, cap);
  rep.add(check_linfty_item(setup.phi->m, "structure"));
  LInftyMorphism rho = rho_as_morphism(*setup.phi, setup.ctx->gl.structure);
  rep.add(check_morphism_item(rho, "representation"));
  if (!rep.pass()) return rep;
  auto rb = check_rb_operator(*setup.ctx, *setup.phi, *setup.t);
  CheckItem item{"rota-baxter-identity"};
  item.pass = rb.pass;
  item.details.push_back("exponential series terms: " +
                         std::to_string(rb.series_terms));
  for (const auto& [arity, res] : rb.residuals) {
    std::ostringstream os;
    os << "residual at V-arity " << arity << ": " << res.str();
    item.details.push_back(os.str());
  }
  rep.add(std::move(item));
  return rep;
}

Report cmd_check_rmatrix(const AlgebraDocument& doc, const RunOptions& opt) {
  Report rep;
  rep.command = "check-rmatrix";
  const int cap = effective_arity(doc, opt);
  const int wcap = effective_weight(doc, opt);
  rep.arity_cap = cap;
  rep.weight_cap = wcap;
  rep.shift = effective_shift(doc, opt);
  LInftyStructure m = build_structure(doc, primary_space(doc), cap);
  rep.add(check_linfty_item(m, "structure"));
  if (!rep.pass()) return rep;
  auto ctx = std::make_shared<const PoissonContext>(m.space, *rep.shift, wcap);
  PoissonPoly r = build_rmatrix(doc, ctx);
  auto rm = check_rmatrix(m, r);
  CheckItem item{"r-matrix-equation"};
  item.pass = rm.pass;
  item.details.push_back("exponential series terms: " +
                         std::to_string(rm.series_terms));
  item.details.push_back(std::string("truncation: ") +
                         (rm.truncation_exact ? "exact"
                                              : "valid up to the weight cap"));
  for (const auto& [bw, res] : rm.residuals) {
    std::ostringstream os;
    os << "residual at bi-weight (" << bw.first << ',' << bw.second
       << "): " << res;
    item.details.push_back(os.str());
  }
  rep.add(std::move(item));
  return rep;
}

Report cmd_derive_schouten(const AlgebraDocument& doc, const RunOptions& opt) {
  Report rep;
  rep.command = "derive-schouten";
  const int cap = effective_arity(doc, opt);
  const int wcap = effective_weight(doc, opt);
  rep.arity_cap = cap;
  rep.weight_cap = wcap;
  rep.shift = effective_shift(doc, opt);
  LInftyStructure m = build_structure(doc, primary_space(doc), cap);
  rep.add(check_linfty_item(m, "structure"));
  if (!rep.pass()) return rep;
  auto sch = schouten_structure(m, *rep.shift, wcap);
  rep.add(check_linfty_item(sch.structure, "schouten-structure"));
  CheckItem table{"schouten-products"};
  for (int k = 1; k <= sch.structure.cap; ++k) {
    for (const auto& [mono, val] : sch.structure.bracket(k).entries()) {
      std::ostringstream os;
      os << k << ": " << monomial_str(mono, *sch.structure.shifted) << " -> "
         << val.str();
      table.details.push_back(os.str());
    }
  }
  if (table.details.empty()) table.details.push_back("all products vanish");
  rep.add(std::move(table));
  return rep;
}

Report cmd_make_bialgebra(const AlgebraDocument& doc, const RunOptions& opt) {
  Report rep;
  rep.command = "make-bialgebra";
  const int cap = effective_arity(doc, opt);
  const int wcap = effective_weight(doc, opt);
  rep.arity_cap = cap;
  rep.weight_cap = wcap;
  rep.shift = effective_shift(doc, opt);
  LInftyStructure m = build_structure(doc, primary_space(doc), cap);
  rep.add(check_linfty_item(m, "structure"));
  if (!rep.pass()) return rep;
  auto ctx = std::make_shared<const PoissonContext>(m.space, *rep.shift, wcap);
  PoissonPoly r = build_rmatrix(doc, ctx);
  auto rm = check_rmatrix(m, r);
  CheckItem prereq{"r-matrix-equation"};
  prereq.pass = rm.pass;
  rep.add(prereq);
  if (!rm.pass) return rep;
  auto tri = triangular_bialgebra(m, r);
  CheckItem sq{"mc-square-zero"};
  sq.pass = tri.square_zero;
  rep.add(sq);
  CheckItem sp{"terms-in-s-prime"};
  sp.pass = tri.in_s_prime;
  rep.add(sp);
  CheckItem terms{"bialgebra-element"};
  terms.details.push_back(tri.rm.str());
  terms.details.push_back(std::string("truncation: ") +
                          (tri.truncation_exact
                               ? "exact"
                               : "valid up to the weight cap"));
  rep.add(std::move(terms));
  return rep;
}

Report cmd_convert(const AlgebraDocument& doc, const RunOptions& opt) {
  Report rep;
  rep.command = "convert-rmatrix-to-rb";
  const int cap = effective_arity(doc, opt);
  const int wcap = effective_weight(doc, opt);
  rep.arity_cap = cap;
  rep.weight_cap = wcap;
  rep.shift = effective_shift(doc, opt);
  LInftyStructure m = build_structure(doc, primary_space(doc), cap);
  rep.add(check_linfty_item(m, "structure"));
  if (!rep.pass()) return rep;
  BridgeContext bc(m.space, *rep.shift, wcap, cap);
  PoissonPoly r = build_rmatrix(doc, bc.pctx);
  auto rm = check_rmatrix(m, r);
  CheckItem prereq{"r-matrix-equation"};
  prereq.pass = rm.pass;
  rep.add(prereq);
  if (!rm.pass) return rep;
  auto conv = rmatrix_to_rb(bc, m, r);
  CheckItem table{"operator"};
  for (int k = 1; k <= bc.rb->cap; ++k) {
    for (const auto& [mono, val] : conv.t.t_comp(k).entries()) {
      std::ostringstream os;
      os << k << ": " << monomial_str(mono, *bc.rb->v1) << " -> "
         << val.str();
      table.details.push_back(os.str());
    }
  }
  if (table.details.empty()) table.details.push_back("zero operator");
  rep.add(std::move(table));
  CheckItem cert{"rota-baxter-certificate"};
  cert.pass = conv.certificate.pass;
  cert.details.push_back("exponential series terms: " +
                         std::to_string(conv.certificate.series_terms));
  rep.add(std::move(cert));
  return rep;
}

Report cmd_check_bridge(const AlgebraDocument& doc, const RunOptions& opt) {
  const int cap = effective_arity(doc, opt);
  const int wcap = effective_weight(doc, opt);
  LInftyStructure m = build_structure(doc, primary_space(doc), cap);
  auto lcheck = check_linfty(m);
  if (!lcheck.pass) {
    Report rep;
    rep.command = "check-bridge";
    rep.arity_cap = cap;
    rep.weight_cap = wcap;
    rep.add(check_linfty_item(m, "structure"));
    return rep;
  }
  RunOptions o2 = opt;
  BridgeContext bc(m.space, effective_shift(doc, o2), wcap, cap);
  PoissonPoly r = build_rmatrix(doc, bc.pctx);
  return check_bridge_diagram(bc, m, r);
}

}  // namespace

Report run_command(const std::string& command, const AlgebraDocument& doc,
                   const RunOptions& opt) {
  try {
    if (command == "check-linfty") return cmd_check_linfty(doc, opt);
    if (command == "check-morphism") return cmd_check_morphism(doc, opt);
    if (command == "check-rb") return cmd_check_rb(doc, opt);
    if (command == "check-rmatrix") return cmd_check_rmatrix(doc, opt);
    if (command == "derive-schouten") return cmd_derive_schouten(doc, opt);
    if (command == "make-bialgebra") return cmd_make_bialgebra(doc, opt);
    if (command == "convert-rmatrix-to-rb") return cmd_convert(doc, opt);
    if (command == "check-bridge") return cmd_check_bridge(doc, opt);
    throw std::invalid_argument("unknown command '" + command + "'");
  } catch (const std::invalid_argument& e) {
    Report rep;
    rep.command = command;
    rep.verdict = Report::Verdict::Error;
    rep.error_message = e.what();
    return rep;
  } catch (const WeightOverflow& e) {
    Report rep;
    rep.command = command;
    rep.verdict = Report::Verdict::Error;
    rep.error_message = e.what();
    return rep;
  }
}

}  // namespace linfty
