#include "linfty/poisson.hpp"

#include <sstream>
#include <stdexcept>

namespace linfty {

PoissonContext::PoissonContext(SpacePtr g_, int n_, int wcap_)
    : g(std::move(g_)), n(n_), wcap(wcap_) {
  if (wcap < 2) throw std::invalid_argument("weight cap must be >= 2");
  std::vector<std::pair<std::string, int>> basis;
  for (int i = 0; i < g->dim(); ++i)
    basis.emplace_back(g->symbol(i) + "*", 1 - g->degree(i));
  for (int i = 0; i < g->dim(); ++i)
    basis.emplace_back(g->symbol(i) + "~", g->degree(i) + n - 1);
  std::ostringstream name;
  name << "S(" << g->base_name() << "*[-1]+" << g->base_name() << "[1-" << n
       << "])";
  gens = make_space(name.str(), std::move(basis));
}

std::pair<int, int> PoissonContext::biweight(const Monomial& mono) const {
  int p = 0, q = 0;
  for (int i : mono) (is_xi(i) ? p : q)++;
  return {p, q};
}

int PoissonContext::shifted_degree(const Monomial& mono) const {
  return monomial_degree(mono, *gens) - n;
}

void PoissonPoly::add_term(const Monomial& mono, const Rat& c, bool truncate) {
  if (c == 0) return;
  if (static_cast<int>(mono.size()) > ctx->wcap) {
    if (truncate) return;
    throw WeightOverflow(monomial_str(mono, *ctx->gens));
  }
  auto norm = normalize_monomial(mono, *ctx->gens);
  if (norm.sign == 0) return;
  auto it = terms.find(norm.mono);
  Rat add = c * norm.sign;
  if (it == terms.end()) {
    terms.emplace(std::move(norm.mono), add);
  } else {
    it->second += add;
    if (it->second == 0) terms.erase(it);
  }
}

PoissonPoly& PoissonPoly::add_scaled(const Rat& c, const PoissonPoly& o) {
  if (c == 0) return *this;
  for (const auto& [m, v] : o.terms) {
    Rat cv = c * v;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, cv);
    } else {
      it->second += cv;
      if (it->second == 0) terms.erase(it);
    }
  }
  return *this;
}

std::optional<int> PoissonPoly::degree() const {
  if (terms.empty()) return std::nullopt;
  int d = ctx->shifted_degree(terms.begin()->first);
  for (const auto& [m, c] : terms)
    if (ctx->shifted_degree(m) != d) return std::nullopt;
  return d;
}

int PoissonPoly::max_weight() const {
  int w = 0;
  for (const auto& [m, c] : terms)
    w = std::max(w, static_cast<int>(m.size()));
  return w;
}

bool PoissonPoly::in_s_prime() const {
  for (const auto& [m, c] : terms) {
    auto [p, q] = ctx->biweight(m);
    if (p < 1 || q < 1) return false;
  }
  return true;
}

bool PoissonPoly::in_pure_v(int min_q) const {
  for (const auto& [m, c] : terms) {
    auto [p, q] = ctx->biweight(m);
    if (p != 0 || q < min_q) return false;
  }
  return true;
}

std::string PoissonPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << ' ' << monomial_str(m, *ctx->gens);
  }
  return os.str();
}

namespace {

PoissonPoly bracket_impl(const PoissonPoly& a, const PoissonPoly& b,
                         bool truncate) {
  if (!(*a.ctx->gens == *b.ctx->gens) || a.ctx->n != b.ctx->n)
    throw std::invalid_argument("poisson_bracket: different contexts");
  const PoissonContext& ctx = *a.ctx;
  const GradedSpace& gens = *ctx.gens;
  const int d = ctx.dim();
  PoissonPoly out(a.ctx);
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      // single contraction: factor s of ma against factor t of mb with
      // <xi_k, v_k> = +1 and <v_k, xi_k> = -(-1)^{|xi_k||v_k|}
      for (std::size_t i = 0; i < ma.size(); ++i) {
        const int s = ma[i];
        for (std::size_t j = 0; j < mb.size(); ++j) {
          const int t = mb[j];
          int pair_sign;
          if (ctx.is_xi(s) && !ctx.is_xi(t) && t - d == s) {
            pair_sign = 1;
          } else if (!ctx.is_xi(s) && ctx.is_xi(t) && s - d == t) {
            pair_sign = (gens.degree(s) & gens.degree(t) & 1) ? 1 : -1;
          } else {
            continue;
          }
          int par = 0;
          for (std::size_t k = i + 1; k < ma.size(); ++k)
            par ^= gens.degree(s) & gens.degree(ma[k]) & 1;
          for (std::size_t k = 0; k < j; ++k)
            par ^= gens.degree(t) & gens.degree(mb[k]) & 1;
          Monomial merged;
          merged.reserve(ma.size() + mb.size() - 2);
          for (std::size_t k = 0; k < ma.size(); ++k)
            if (k != i) merged.push_back(ma[k]);
          for (std::size_t k = 0; k < mb.size(); ++k)
            if (k != j) merged.push_back(mb[k]);
          Rat coeff = ca * cb * pair_sign;
          if (par) coeff = -coeff;
          out.add_term(merged, coeff, truncate);
        }
      }
    }
  }
  return out;
}

}  // namespace

PoissonPoly poisson_bracket(const PoissonPoly& a, const PoissonPoly& b) {
  return bracket_impl(a, b, false);
}

PoissonPoly poisson_bracket_trunc(const PoissonPoly& a, const PoissonPoly& b) {
  return bracket_impl(a, b, true);
}

namespace {

/// Sign of the entry dictionary: the Koszul factor of the xi-monomial
/// against the v-generator plus the internal pair sign of the xi-block
/// (dualization reads the monomial in the opposite order).
int dictionary_parity(const GradedSpace& gens, const Monomial& xis,
                      int vdeg) {
  int f_deg = 0, internal = 0;
  for (std::size_t i = 0; i < xis.size(); ++i) {
    const int di = gens.degree(xis[i]) & 1;
    internal ^= f_deg & di;
    f_deg ^= di;
  }
  return (f_deg & vdeg & 1) ^ internal;
}

}  // namespace

PoissonPoly double_map(const PoissonCtxPtr& ctx, const DerivationRep& q) {
  const GradedSpace& gens = *ctx->gens;
  PoissonPoly out(ctx);
  for (int k = 1; k <= q.cap(); ++k) {
    for (const auto& [mono, val] : q.comp(k).entries()) {
      Monomial xis;
      xis.reserve(mono.size() + 1);
      for (int i : mono) xis.push_back(ctx->xi(i));
      const Rat inv_aut = Rat(1) / monomial_automorphisms(mono);
      for (const auto& [t, c] : val.terms()) {
        Monomial full = xis;
        full.push_back(ctx->v(t));
        Rat coeff = c * inv_aut;
        if (dictionary_parity(gens, xis, gens.degree(ctx->v(t)))) coeff = -coeff;
        out.add_term(full, coeff);
      }
    }
  }
  return out;
}

DerivationRep multimap_of_poly(const PoissonContext& ctx,
                               const PoissonPoly& p, int degree, int cap) {
  SpacePtr g1 = shift_space(ctx.g, 1);
  DerivationRep out(g1, degree, cap);
  const GradedSpace& gens = *ctx.gens;
  const int d = ctx.dim();
  for (const auto& [mono, c] : p.terms) {
    auto [pw, qw] = ctx.biweight(mono);
    if (qw != 1)
      throw std::invalid_argument(
          "multimap_of_poly: polynomial not in the (k,1) block");
    Monomial key;
    int vout = -1;
    for (int i : mono) {
      if (ctx.is_xi(i))
        key.push_back(i);
      else
        vout = i - d;
    }
    Rat coeff = c * monomial_automorphisms(key);
    if (dictionary_parity(gens, key, gens.degree(ctx.v(vout)))) coeff = -coeff;
    Element val = Element::zero(g1);
    val.add_term(vout, coeff);
    out.comp(static_cast<int>(key.size())).add_entry(key, val);
  }
  return out;
}

PoissonPoly poisson_exp_ad(const PoissonPoly& p, const PoissonPoly& r,
                           int limit, int* terms_used) {
  PoissonPoly acc = p;
  PoissonPoly term = p;
  Rat fact = 1;
  int k = 0;
  while (true) {
    term = poisson_bracket_trunc(term, r);
    if (term.is_zero()) break;
    ++k;
    if (k > limit)
      throw std::runtime_error("poisson_exp_ad: series did not terminate");
    fact *= k;
    Rat c = Rat(1) / fact;
    acc.add_scaled(c, term);
  }
  if (terms_used) *terms_used = k;
  return acc;
}

SchoutenSpace make_schouten_space(PoissonCtxPtr ctx, int min_q) {
  SchoutenSpace s;
  s.ctx = ctx;
  std::vector<std::pair<std::string, int>> basis;
  std::vector<std::pair<std::string, int>> vb;
  for (int i = 0; i < ctx->dim(); ++i)
    vb.emplace_back(ctx->gens->symbol(ctx->v(i)),
                    ctx->gens->degree(ctx->v(i)));
  const SpacePtr vblock = make_space("v-block", std::move(vb));
  for (int q = min_q; q <= ctx->wcap; ++q) {
    for (const auto& vm : monomials_of_length(*vblock, q)) {
      Monomial mono;
      mono.reserve(q);
      for (int i : vm) mono.push_back(ctx->v(i));
      s.index[mono] = static_cast<int>(s.monos.size());
      basis.emplace_back(monomial_str(mono, *ctx->gens),
                         ctx->shifted_degree(mono));
      s.monos.push_back(mono);
    }
  }
  std::ostringstream name;
  name << "S" << (min_q >= 2 ? ">=2" : "") << "(" << ctx->g->base_name()
       << "[1-" << ctx->n << "])[" << ctx->n << "]";
  s.flat = make_space(name.str(), std::move(basis));
  return s;
}

Element SchoutenStructure::to_h(const PoissonPoly& p) const {
  Element out(structure.shifted);
  for (const auto& [m, c] : p.terms) {
    auto it = h.index.find(m);
    if (it == h.index.end())
      throw std::logic_error("schouten: polynomial escaped the pure-v block");
    out.add_term(it->second, c);
  }
  return out;
}

PoissonPoly SchoutenStructure::from_h(const Element& e) const {
  PoissonPoly out(h.ctx);
  for (const auto& [i, c] : e.terms()) out.add_term(h.monos.at(i), c);
  return out;
}

SchoutenStructure schouten_structure(const LInftyStructure& m, int n,
                                     int wcap) {
  auto check = check_linfty(m);
  if (!check.pass)
    throw std::invalid_argument("schouten_structure: input is not L-infinity");
  auto ctx = std::make_shared<const PoissonContext>(m.space, n, wcap);
  SchoutenSpace h = make_schouten_space(ctx, 1);

  std::vector<std::pair<std::string, int>> basis;
  for (std::size_t i = 0; i < h.monos.size(); ++i)
    basis.emplace_back(h.flat->symbol(static_cast<int>(i)),
                       h.flat->degree(static_cast<int>(i)) + 1);
  auto underlying = make_space(h.flat->base_name() + "[-1]", std::move(basis));

  SchoutenStructure out{std::move(h), LInftyStructure(underlying, m.cap),
                        double_map(ctx, m.m)};

  auto proj_pure_v = [&](const PoissonPoly& p) {
    PoissonPoly r(ctx);
    for (const auto& [mono, c] : p.terms) {
      auto [pw, qw] = ctx->biweight(mono);
      if (pw == 0 && qw >= 1) r.add_term(mono, c);
    }
    return r;
  };

  const SpacePtr& hs = out.structure.shifted;
  for (int k = 1; k <= out.structure.cap; ++k) {
    for (const auto& mono : monomials_of_length(*hs, k)) {
      PoissonPoly seed(ctx);
      seed.add_term(out.h.monos[mono[0]], 1);
      PoissonPoly acc = poisson_bracket_trunc(out.dm, seed);
      for (int t = 1; t < k && !acc.is_zero(); ++t) {
        PoissonPoly ht(ctx);
        ht.add_term(out.h.monos[mono[t]], 1);
        acc = poisson_bracket_trunc(acc, ht);
      }
      PoissonPoly val = proj_pure_v(acc);
      if (val.is_zero()) continue;
      out.structure.bracket(k).add_entry(mono, out.to_h(val));
    }
  }
  return out;
}

RMatrixReport check_rmatrix(const LInftyStructure& m, const PoissonPoly& r) {
  const auto& ctx = r.ctx;
  if (!r.is_zero() && !r.in_pure_v(2))
    throw std::invalid_argument(
        "check_rmatrix: r must lie in the pure-v block with q >= 2");
  if (!r.is_zero() && r.degree() != std::optional<int>(0))
    throw std::invalid_argument("check_rmatrix: r must have degree 0");
  PoissonPoly dm = double_map(ctx, m.m);
  RMatrixReport rep;
  PoissonPoly full = poisson_exp_ad(dm, r, ctx->wcap + 2, &rep.series_terms);
  rep.truncation_exact =
      dm.max_weight() + rep.series_terms * std::max(0, r.max_weight() - 2) <=
      ctx->wcap;
  std::map<std::pair<int, int>, PoissonPoly> by_weight;
  for (const auto& [mono, c] : full.terms) {
    auto [p, q] = ctx->biweight(mono);
    if (p == 0 && q >= 2) {
      auto it = by_weight.find({p, q});
      if (it == by_weight.end())
        it = by_weight.emplace(std::make_pair(p, q), PoissonPoly(ctx)).first;
      it->second.add_term(mono, c);
    }
  }
  for (const auto& [bw, poly] : by_weight) {
    rep.pass = false;
    rep.residuals.emplace_back(bw, poly.str());
  }
  return rep;
}

Element rmatrix_mc_residual(const LInftyStructure& m, const PoissonPoly& r) {
  auto sch = schouten_structure(m, r.ctx->n, r.ctx->wcap);
  Element rc = sch.to_h(r);
  return mc_residual_series(sch.structure, rc);
}

TriangularResult triangular_bialgebra(const LInftyStructure& m,
                                      const PoissonPoly& r) {
  auto mc = check_linfty(m);
  if (!mc.pass)
    throw std::invalid_argument("triangular_bialgebra: m fails check_linfty");
  auto rm_check = check_rmatrix(m, r);
  if (!rm_check.pass)
    throw std::invalid_argument("triangular_bialgebra: r is not an r-matrix");
  PoissonPoly dm = double_map(r.ctx, m.m);
  int terms = 0;
  PoissonPoly rm = poisson_exp_ad(dm, r, r.ctx->wcap + 2, &terms);
  PoissonPoly sq = poisson_bracket_trunc(rm, rm);
  const bool exact =
      rm_check.truncation_exact &&
      2 * rm.max_weight() - 2 <= r.ctx->wcap;
  return TriangularResult{rm, sq.is_zero(), rm.in_s_prime(), exact};
}

struct PoissonVStructure::State {
  PoissonCtxPtr ctx;
  SpacePtr flat;
  std::vector<Monomial> monos;
  std::map<Monomial, int> index;

  Element to_flat(const PoissonPoly& p) const {
    Element out = Element::zero(flat);
    for (const auto& [m, c] : p.terms) {
      auto it = index.find(m);
      if (it == index.end()) {
        if (static_cast<int>(m.size()) > ctx->wcap) continue;  // quotient
        throw std::logic_error(
            "poisson v-structure: polynomial left the weight >= 2 block");
      }
      out.add_term(it->second, c);
    }
    return out;
  }
  PoissonPoly from_flat(const Element& e) const {
    PoissonPoly out(ctx);
    for (const auto& [i, c] : e.terms()) out.add_term(monos.at(i), c);
    return out;
  }
};

PoissonVStructure::PoissonVStructure(PoissonCtxPtr ctx,
                                     const PoissonPoly* dm) {
  auto st = std::make_shared<State>();
  st->ctx = ctx;
  std::vector<std::pair<std::string, int>> basis;
  for (int len = 2; len <= ctx->wcap; ++len) {
    for (const auto& mono : monomials_of_length(*ctx->gens, len)) {
      st->index[mono] = static_cast<int>(st->monos.size());
      basis.emplace_back(monomial_str(mono, *ctx->gens),
                         ctx->shifted_degree(mono));
      st->monos.push_back(mono);
    }
  }
  st->flat = make_space("S>=2-shifted", std::move(basis));
  state_ = st;

  std::shared_ptr<const State> s = state_;
  vs_.l = s->flat;
  vs_.bracket = [s](const Element& x, const Element& y) {
    return s->to_flat(poisson_bracket_trunc(s->from_flat(x), s->from_flat(y)));
  };
  if (dm) {
    PoissonPoly d = *dm;
    vs_.diff = [s, d](const Element& x) {
      return s->to_flat(poisson_bracket_trunc(d, s->from_flat(x)));
    };
  } else {
    vs_.diff = [s](const Element&) { return Element::zero(s->flat); };
  }
  vs_.proj = [s](const Element& x) {
    Element out = Element::zero(s->flat);
    for (const auto& [i, c] : x.terms()) {
      auto [p, q] = s->ctx->biweight(s->monos[i]);
      if (p == 0 && q >= 2) out.add_term(i, c);
    }
    return out;
  };
  vs_.weight.resize(st->monos.size());
  for (std::size_t i = 0; i < st->monos.size(); ++i) {
    auto [p, q] = ctx->biweight(st->monos[i]);
    vs_.weight[i] = 2 * q + p;
  }
  vs_.series_limit = ctx->wcap + 4;
}

const SpacePtr& PoissonVStructure::flat() const { return state_->flat; }
const std::vector<Monomial>& PoissonVStructure::monos() const {
  return state_->monos;
}
Element PoissonVStructure::to_flat(const PoissonPoly& p) const {
  return state_->to_flat(p);
}
PoissonPoly PoissonVStructure::from_flat(const Element& e) const {
  return state_->from_flat(e);
}

Element LhmStructure::element_of(const DerivationRep& m,
                                 const PoissonPoly& r) const {
  PoissonPoly dm = double_map(ctx, m);
  Element out(brackets.structure.shifted);
  std::map<Monomial, int> lpos, hpos;
  for (std::size_t k = 0; k < lprime_monos.size(); ++k)
    lpos[lprime_monos[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < h_monos.size(); ++k)
    hpos[h_monos[k]] = static_cast<int>(k);
  for (const auto& [mono, c] : dm.terms) {
    auto it = lpos.find(mono);
    if (it == lpos.end())
      throw std::logic_error("lhm element: double image misaligned");
    out.add_term(it->second, c);
  }
  for (const auto& [mono, c] : r.terms) {
    auto it = hpos.find(mono);
    if (it == hpos.end())
      throw std::invalid_argument("lhm element: r outside the q >= 2 block");
    out.add_term(brackets.l_count + it->second, c);
  }
  return out;
}

LhmStructure build_lhm(const PoissonCtxPtr& ctx, int cap) {
  auto ambient = std::make_shared<PoissonVStructure>(ctx, nullptr);
  std::vector<Element> lprime;
  std::vector<Monomial> lmonos;
  const auto& monos = ambient->monos();
  for (std::size_t i = 0; i < monos.size(); ++i) {
    auto [p, q] = ctx->biweight(monos[i]);
    if (q == 1 && p >= 1) {
      lprime.push_back(Element::basis(ambient->flat(), static_cast<int>(i)));
      lmonos.push_back(monos[i]);
    }
  }
  DerivedBrackets db = derived_brackets_big(ambient->vs(), cap, &lprime);
  std::vector<Monomial> hmonos;
  for (const auto& h : db.h_basis) {
    if (h.terms().size() != 1)
      throw std::logic_error("build_lhm: unexpected h basis");
    hmonos.push_back(monos.at(h.terms().begin()->first));
  }
  return LhmStructure{ctx, ambient, std::move(db), std::move(lmonos),
                      std::move(hmonos)};
}

}  // namespace linfty
