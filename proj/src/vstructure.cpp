#include "linfty/vstructure.hpp"

#include <sstream>
#include <stdexcept>

namespace linfty {

namespace {

Element basis_el(const SpacePtr& s, int i) { return Element::basis(s, i); }

int min_weight(const VStructureDgla& vs, const Element& x) {
  int w = -1;
  for (const auto& [i, c] : x.terms()) {
    const int wi = vs.weight.at(i);
    if (w < 0 || wi < w) w = wi;
  }
  return w;  // -1 for zero
}

}  // namespace

std::vector<Element> im_p_basis(const VStructureDgla& vs) {
  std::vector<Element> images;
  for (int i = 0; i < vs.l->dim(); ++i)
    images.push_back(vs.p(basis_el(vs.l, i)));
  auto keep = independent_subset(images, vs.l->dim());
  std::vector<Element> out;
  for (int k : keep) out.push_back(images[k]);
  return out;
}

std::vector<Element> ker_p_basis(const VStructureDgla& vs) {
  std::vector<Element> images;
  for (int i = 0; i < vs.l->dim(); ++i)
    images.push_back(vs.ker_part(basis_el(vs.l, i)));
  auto keep = independent_subset(images, vs.l->dim());
  std::vector<Element> out;
  for (int k : keep) out.push_back(images[k]);
  return out;
}

Report check_vstructure(const VStructureDgla& vs) {
  Report rep;
  rep.command = "check-vstructure";
  const int n = vs.l->dim();

  CheckItem idem{"projector-idempotent"};
  for (int i = 0; i < n; ++i) {
    Element e = basis_el(vs.l, i);
    Element pe = vs.p(e);
    if (!(vs.p(pe) == pe)) {
      idem.pass = false;
      idem.details.push_back("P^2 != P on basis vector " + vs.l->symbol(i));
      break;
    }
    auto d = pe.degree();
    if (d && e.degree() && *d != *e.degree()) {
      idem.pass = false;
      idem.details.push_back("P not degree 0 on " + vs.l->symbol(i));
      break;
    }
  }
  rep.add(idem);

  auto ker = ker_p_basis(vs);
  auto im = im_p_basis(vs);

  CheckItem kd{"kernel-closed-under-d"};
  for (const auto& k : ker) {
    Element pk = vs.p(vs.diff(k));
    if (!pk.is_zero()) {
      kd.pass = false;
      kd.details.push_back("P(d(" + k.str() + ")) = " + pk.str());
      break;
    }
  }
  rep.add(kd);

  CheckItem kb{"kernel-closed-under-bracket"};
  for (std::size_t a = 0; a < ker.size() && kb.pass; ++a)
    for (std::size_t b = a; b < ker.size(); ++b) {
      Element pk = vs.p(vs.bracket(ker[a], ker[b]));
      if (!pk.is_zero()) {
        kb.pass = false;
        kb.details.push_back("P[ker,ker] != 0 at pair (" +
                             std::to_string(a) + "," + std::to_string(b) +
                             "): " + pk.str());
        break;
      }
    }
  rep.add(kb);

  CheckItem ab{"image-abelian"};
  for (std::size_t a = 0; a < im.size() && ab.pass; ++a)
    for (std::size_t b = a; b < im.size(); ++b) {
      Element br = vs.bracket(im[a], im[b]);
      if (!br.is_zero()) {
        ab.pass = false;
        ab.details.push_back("[im P, im P] != 0: [" + im[a].str() + ", " +
                             im[b].str() + "] = " + br.str());
        break;
      }
    }
  rep.add(ab);

  CheckItem adm{"admissibility-weight-raising"};
  if (static_cast<int>(vs.weight.size()) != n) {
    adm.pass = false;
    adm.details.push_back("weight function missing or wrong length");
  } else {
    for (int i = 0; i < n && adm.pass; ++i) {
      const Element e = basis_el(vs.l, i);
      for (const auto& h : im) {
        Element ph = vs.p(vs.bracket(e, h));
        if (ph.is_zero()) continue;
        const int before = vs.weight[i];
        for (const auto& [t, c] : ph.terms()) {
          if (vs.weight.at(t) < before + 1) {
            adm.pass = false;
            std::ostringstream os;
            os << "P[" << vs.l->symbol(i) << ", h] has weight "
               << vs.weight.at(t) << " term " << vs.l->symbol(t)
               << ", not above " << before;
            adm.details.push_back(os.str());
            break;
          }
        }
        if (!adm.pass) break;
      }
    }
  }
  rep.add(adm);
  return rep;
}

Element gauge(const VStructureDgla& vs, const Element& x, const Element& h) {
  if (!h.is_zero() && !h.homogeneous_of(0))
    throw std::invalid_argument("gauge: h must have degree 0");
  if (!vs.p(h).operator==(h))
    throw std::invalid_argument("gauge: h must lie in im P");
  Element out = x;
  // ad-series on x
  Element term = x;
  Rat fact = 1;
  for (int k = 1;; ++k) {
    term = vs.bracket(term, h);
    if (term.is_zero()) break;
    if (k > vs.series_limit)
      throw std::runtime_error(
          "gauge: ad_h series did not terminate within the certified limit");
    fact *= k;
    Rat c = Rat(1) / fact;
    out.add_scaled(c, term);
  }
  // ad-series on dh
  Element dh = vs.diff(h);
  term = dh;
  fact = 1;
  for (int k = 1;; ++k) {
    if (term.is_zero()) break;
    if (k > vs.series_limit)
      throw std::runtime_error(
          "gauge: ad_h series on dh did not terminate within the limit");
    fact *= k;
    Rat c = Rat(1) / fact;
    out.add_scaled(c, term);
    term = vs.bracket(term, h);
  }
  return out;
}

Element DerivedBrackets::h_coords(const VStructureDgla& vs,
                                  const Element& x) const {
  auto sol = solve_in_span(h_basis, x, vs.l->dim());
  if (!sol)
    throw std::logic_error("derived brackets: value escaped im P");
  const int off = l_count;
  Element out(structure.shifted);
  for (std::size_t k = 0; k < sol->size(); ++k)
    out.add_term(off + static_cast<int>(k), (*sol)[k]);
  return out;
}

namespace {

/// Iterated bracket P[..[seed, h_2].., h_k] in L, staying in L coordinates.
Element iterated_projected(const VStructureDgla& vs, Element seed,
                           const std::vector<Element>& hs) {
  for (const auto& h : hs) seed = vs.bracket(seed, h);
  return vs.p(seed);
}

}  // namespace

DerivedBrackets derived_brackets_small(const VStructureDgla& vs, int cap) {
  auto hb = im_p_basis(vs);
  std::vector<std::pair<std::string, int>> basis;
  for (std::size_t k = 0; k < hb.size(); ++k) {
    auto d = hb[k].degree();
    if (!d) throw std::invalid_argument("im P basis must be homogeneous");
    std::ostringstream os;
    os << "h" << k << ':' << hb[k].str();
    basis.emplace_back(os.str(), *d + 1);  // underlying space is h[-1]
  }
  auto underlying = make_space("h[-1]", std::move(basis));
  DerivedBrackets out{LInftyStructure(underlying, cap), hb, {}, 0};

  const SpacePtr& hsp = out.structure.shifted;  // degrees match h in L
  for (int k = 1; k <= cap; ++k) {
    for (const auto& mono : monomials_of_length(*hsp, k)) {
      Element seed = vs.diff(hb[mono[0]]);
      std::vector<Element> rest;
      for (int t = 1; t < k; ++t) rest.push_back(hb[mono[t]]);
      Element val = iterated_projected(vs, seed, rest);
      if (val.is_zero()) continue;
      out.structure.bracket(k).add_entry(mono, out.h_coords(vs, val));
    }
  }
  return out;
}

DerivedBrackets derived_brackets_big(const VStructureDgla& vs, int cap,
                                     const std::vector<Element>* lprime) {
  std::vector<Element> lb;
  if (lprime) {
    lb = *lprime;
    // closure of the sub-dgla
    const int dim = vs.l->dim();
    for (const auto& a : lb) {
      if (!solve_in_span(lb, vs.diff(a), dim))
        throw std::invalid_argument("derived_brackets_big: L' not d-closed");
      for (const auto& b : lb)
        if (!solve_in_span(lb, vs.bracket(a, b), dim))
          throw std::invalid_argument(
              "derived_brackets_big: L' not bracket-closed");
    }
  } else {
    for (int i = 0; i < vs.l->dim(); ++i) lb.push_back(basis_el(vs.l, i));
  }
  auto hb = im_p_basis(vs);

  std::vector<std::pair<std::string, int>> basis;
  for (std::size_t k = 0; k < lb.size(); ++k) {
    auto d = lb[k].degree();
    if (!d) throw std::invalid_argument("L' basis must be homogeneous");
    std::ostringstream os;
    os << "L" << k << ':' << lb[k].str();
    basis.emplace_back(os.str(), *d);  // L-part keeps its degree
  }
  for (std::size_t k = 0; k < hb.size(); ++k) {
    auto d = hb[k].degree();
    if (!d) throw std::invalid_argument("im P basis must be homogeneous");
    std::ostringstream os;
    os << "h" << k << ':' << hb[k].str();
    basis.emplace_back(os.str(), *d + 1);
  }
  auto underlying = make_space("L(+)h[-1]", std::move(basis));
  DerivedBrackets out{LInftyStructure(underlying, cap), hb, lb,
                      static_cast<int>(lb.size())};
  const int nl = out.l_count;
  const SpacePtr& w = out.structure.shifted;  // L[1] (+) h

  // coordinates of an L'-valued element in the L-block of the big space
  auto l_coords = [&](const Element& x) {
    auto sol = solve_in_span(lb, x, vs.l->dim());
    if (!sol)
      throw std::logic_error("derived brackets: value escaped span of L'");
    Element e(w);
    for (std::size_t k = 0; k < sol->size(); ++k)
      e.add_term(static_cast<int>(k), (*sol)[k]);
    return e;
  };

  for (int k = 1; k <= cap; ++k) {
    for (const auto& mono : monomials_of_length(*w, k)) {
      int l_slots = 0;
      for (int idx : mono)
        if (idx < nl) ++l_slots;
      Element value(w);

      if (k == 1) {
        // m1(x[1], h) = (-d(x)[1], P(x + d(h)))
        if (mono[0] < nl) {
          const Element& x = lb[mono[0]];
          Element dx = vs.diff(x);
          if (!dx.is_zero()) value.add_scaled(-1, l_coords(dx));
          Element px = vs.p(x);
          if (!px.is_zero()) value += out.h_coords(vs, px);
        } else {
          Element pdh = vs.p(vs.diff(hb[mono[0] - nl]));
          if (!pdh.is_zero()) value += out.h_coords(vs, pdh);
        }
      } else if (l_slots == 2 && k == 2) {
        // m2(x[1], y[1]) = (-1)^{|x|} [x,y][1]
        const Element& x = lb[mono[0]];
        const Element& y = lb[mono[1]];
        Element br = vs.bracket(x, y);
        if (!br.is_zero()) {
          value += l_coords(br);
          if (*x.degree() & 1) value.scale(-1);
        }
      } else if (l_slots == 1) {
        // m_k(x[1], h_1, .., h_{k-1}) = P[..[[x,h_1],h_2].., h_{k-1}],
        // with the sign of moving the L-slot to the front.
        int pos = 0;
        while (mono[pos] >= nl) ++pos;
        std::vector<int> sigma;
        sigma.push_back(pos);
        for (int t = 0; t < k; ++t)
          if (t != pos) sigma.push_back(t);
        std::vector<int> deg(k);
        for (int t = 0; t < k; ++t) deg[t] = w->degree(mono[t]);
        const int eps = koszul_sign(sigma, deg);
        Element seed = lb[mono[pos]];
        std::vector<Element> rest;
        for (int t = 0; t < k; ++t)
          if (t != pos) rest.push_back(hb[mono[t] - nl]);
        Element val = iterated_projected(vs, seed, rest);
        if (!val.is_zero()) {
          value += out.h_coords(vs, val);
          value.scale(eps);
        }
      } else if (l_slots == 0) {
        Element seed = vs.diff(hb[mono[0] - nl]);
        std::vector<Element> rest;
        for (int t = 1; t < k; ++t) rest.push_back(hb[mono[t] - nl]);
        Element val = iterated_projected(vs, seed, rest);
        if (!val.is_zero()) value += out.h_coords(vs, val);
      }
      // all other shapes vanish

      if (!value.is_zero()) out.structure.bracket(k).add_entry(mono, value);
    }
  }
  return out;
}

Element dgla_mc_residual(const VStructureDgla& vs, const Element& x) {
  Element res = vs.diff(x);
  Element sq = vs.bracket(x, x);
  res.add_scaled(Rat(1, 2), sq);
  return res;
}

VmcReport vmc_check(const VStructureDgla& vs, const Element& x,
                    const Element& h, int cap) {
  VmcReport r;
  r.x_is_mc = dgla_mc_residual(vs, x).is_zero();
  r.projection_vanishes = vs.p(gauge(vs, x, h)).is_zero();

  auto big = derived_brackets_big(vs, cap);
  Element xi(big.structure.shifted);
  for (const auto& [i, c] : x.terms()) xi.add_term(i, c);  // L' = full basis
  Element hc = big.h_coords(vs, vs.p(h));
  xi += hc;
  r.big_mc = mc_residual_series(big.structure, xi).is_zero();
  r.equivalence_holds = (r.big_mc == (r.x_is_mc && r.projection_vanishes));
  return r;
}

Element map_j(const VStructureDgla& vs, const Element& x, const Element& h,
              int cap) {
  auto r = vmc_check(vs, x, h, cap);
  if (!r.pass())
    throw std::invalid_argument("map_j: input pair is not VMC certified");
  Element out = gauge(vs, x, h);
  if (!vs.p(out).is_zero())
    throw std::logic_error("map_j: output escaped ker P");
  if (!dgla_mc_residual(vs, out).is_zero())
    throw std::logic_error("map_j: output is not MC in ker P");
  return out;
}

Element map_i(const VStructureDgla& vs, const Element& h, int cap) {
  auto small = derived_brackets_small(vs, cap);
  Element hc = small.h_coords(vs, vs.p(h));
  if (!mc_residual_series(small.structure, hc).is_zero())
    throw std::invalid_argument("map_i: h is not MC in h[-1]");
  Element out = gauge(vs, Element::zero(vs.l), h);
  if (!vs.p(out).is_zero())
    throw std::logic_error("map_i: output escaped ker P");
  if (!dgla_mc_residual(vs, out).is_zero())
    throw std::logic_error("map_i: output is not MC in ker P");
  return out;
}

}  // namespace linfty
