#include "linfty/linfty_structure.hpp"

#include <sstream>
#include <stdexcept>

namespace linfty {

LInftyStructure::LInftyStructure(SpacePtr g, int cap_)
    : space(std::move(g)),
      shifted(shift_space(space, 1)),
      m(shifted, 1, cap_),
      cap(cap_) {
  if (cap_ < 1 || cap_ > 12)
    throw std::invalid_argument("arity cap must be between 1 and 12");
}

LInftyStructure make_abelian(SpacePtr g, int cap) {
  return LInftyStructure(std::move(g), cap);
}

LInftyStructure dgla_structure(
    SpacePtr l, const std::function<Element(int, int)>& bracket_basis,
    const std::function<Element(int)>& diff_basis, int cap) {
  LInftyStructure s(l, cap);
  const int n = l->dim();
  for (int i = 0; i < n; ++i) {
    Element dx = diff_basis(i);
    if (!dx.is_zero()) {
      Element v = shift_element(dx, 1);
      v.scale(-1);
      s.bracket(1).add_entry({i}, v);
    }
  }
  if (cap >= 2) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        if (i == j && (s.shifted->degree(i) & 1)) continue;
        Element br = bracket_basis(i, j);
        if (br.is_zero()) continue;
        Element v = shift_element(br, 1);
        if (l->degree(i) & 1) v.scale(-1);
        s.bracket(2).add_entry({i, j}, v);
      }
    }
  }
  return s;
}

Element dgla_bracket_of(const LInftyStructure& s, const Element& x,
                        const Element& y) {
  // [x,y] = (-1)^{|x|} m2(x[1], y[1])[-1]
  auto dx = x.degree();
  if (!dx && !x.is_zero())
    throw std::invalid_argument("dgla_bracket_of needs homogeneous x");
  std::vector<Element> args = {shift_element(x, 1), shift_element(y, 1)};
  Element v = s.bracket(2).eval(args);
  Element out = shift_element(v, -1);
  if (dx && (*dx & 1)) out.scale(-1);
  return out;
}

Element dgla_diff_of(const LInftyStructure& s, const Element& x) {
  std::vector<Element> args = {shift_element(x, 1)};
  Element v = s.bracket(1).eval(args);
  Element out = shift_element(v, -1);
  out.scale(-1);
  return out;
}

Element linfty_relation(const LInftyStructure& s, int n, const Monomial& mono) {
  const GradedSpace& w = *s.shifted;
  std::vector<int> deg(mono.size());
  for (std::size_t i = 0; i < mono.size(); ++i) deg[i] = w.degree(mono[i]);
  Element out = Element::zero(s.shifted);
  for (int i = 1; i <= n; ++i) {
    const int outer = n - i + 1;
    if (i > s.cap || outer > s.cap) continue;
    if (s.bracket(i).is_zero() || s.bracket(outer).is_zero()) continue;
    for (const auto& sigma : unshuffles(i, n)) {
      const int eps = koszul_sign(sigma, deg);
      Monomial first(i), rest(n - i);
      for (int k = 0; k < i; ++k) first[k] = mono[sigma[k]];
      for (int k = i; k < n; ++k) rest[k - i] = mono[sigma[k]];
      Element inner = s.bracket(i).eval_basis(first);
      if (inner.is_zero()) continue;
      out.add_scaled(eps, s.bracket(outer).eval_first(inner, rest));
    }
  }
  return out;
}

LInftyCheck check_linfty(const LInftyStructure& s) {
  LInftyCheck r;
  for (int n = 1; n <= s.cap; ++n) {
    r.checked_arities.push_back(n);
    for (const auto& mono : monomials_of_length(*s.shifted, n)) {
      Element res = linfty_relation(s, n, mono);
      if (!res.is_zero()) {
        r.pass = false;
        r.violation = RelationViolation{n, mono, std::move(res)};
        return r;
      }
    }
  }
  return r;
}

CheckItem check_linfty_item(const LInftyStructure& s, const std::string& name) {
  auto c = check_linfty(s);
  CheckItem item;
  item.name = name;
  item.pass = c.pass;
  std::ostringstream os;
  os << "relations checked for arities 1..";
  os << s.cap;
  item.details.push_back(os.str());
  if (c.violation) {
    std::ostringstream v;
    v << "violated at arity " << c.violation->arity << " on monomial "
      << monomial_str(c.violation->mono, *s.shifted) << ", residual "
      << c.violation->residual.str();
    item.details.push_back(v.str());
  }
  return item;
}

Element mc_residual_series(const LInftyStructure& s, const Element& xi) {
  if (!same_space(xi.space(), s.shifted))
    throw std::invalid_argument("mc residual: element not in g[1]");
  if (!xi.homogeneous_of(0)) {
    // general expansion with full Koszul bookkeeping; the degree-0 case
    // below avoids the k-fold blowup
    Element out = Element::zero(s.shifted);
    for (int k = 1; k <= s.cap; ++k) {
      if (s.bracket(k).is_zero()) continue;
      std::vector<Element> args(k, xi);
      Rat c = Rat(1) / factorial(k);
      out.add_scaled(c, s.bracket(k).eval(args));
    }
    return out;
  }
  Element out = Element::zero(s.shifted);
  std::vector<int> support;
  for (const auto& [i, c] : xi.terms()) support.push_back(i);
  // All support degrees are 0, so expansion needs no Koszul signs and the
  // 1/k! collapses to 1/(product of multiplicity factorials) per multiset.
  Monomial mono;
  std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t start,
                                                         const Rat& coeff) {
    const int k = static_cast<int>(mono.size());
    if (k >= 1 && k <= s.cap && !s.bracket(k).is_zero()) {
      Rat c = coeff / monomial_automorphisms(mono);
      out.add_scaled(c, s.bracket(k).eval_basis(mono));
    }
    if (k == s.cap) return;
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

Element mc_residual(const LInftyStructure& s, const Element& xi,
                    const Truncation& cert) {
  switch (cert.kind) {
    case Truncation::Kind::DglaOnly:
      for (int k = 3; k <= s.cap; ++k)
        if (!s.bracket(k).is_zero())
          throw std::invalid_argument(
              "mc residual: dgla certificate but higher brackets present");
      break;
    case Truncation::Kind::Nilpotent:
    case Truncation::Kind::WeightBound:
      if (cert.bound > s.cap)
        throw std::invalid_argument(
            "mc residual: truncation bound exceeds arity cap; series may "
            "not be finite within the stored components");
      break;
  }
  return mc_residual_series(s, xi);
}

}  // namespace linfty
