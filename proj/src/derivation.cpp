#include "linfty/derivation.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace linfty {

DerivationRep::DerivationRep(SpacePtr space, int degree, int cap)
    : space_(std::move(space)), degree_(degree), cap_(cap) {
  if (cap_ < 1) throw std::invalid_argument("DerivationRep cap must be >= 1");
  comps_.reserve(cap_);
  for (int k = 1; k <= cap_; ++k)
    comps_.emplace_back(space_, space_, k, degree_);
}

MultiMap& DerivationRep::comp(int k) {
  if (k < 1 || k > cap_)
    throw std::out_of_range("DerivationRep: arity beyond cap requested");
  return comps_[k - 1];
}

const MultiMap& DerivationRep::comp(int k) const {
  if (k < 1 || k > cap_)
    throw std::out_of_range("DerivationRep: arity beyond cap requested");
  return comps_[k - 1];
}

bool DerivationRep::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

DerivationRep& DerivationRep::add_scaled(const Rat& c,
                                         const DerivationRep& o) {
  if (o.degree_ != degree_ || !same_space(o.space_, space_))
    throw std::invalid_argument("DerivationRep::add_scaled: shape mismatch");
  const int k_max = std::min(cap_, o.cap_);
  for (int k = 1; k <= o.cap_; ++k) {
    if (k > k_max) {
      if (!o.comp(k).is_zero())
        throw std::invalid_argument("DerivationRep::add_scaled: cap exceeded");
      continue;
    }
    comp(k).add_scaled(c, o.comp(k));
  }
  return *this;
}

bool DerivationRep::operator==(const DerivationRep& o) const {
  if (degree_ != o.degree_ || !same_space(space_, o.space_)) return false;
  for (int k = 1; k <= std::max(cap_, o.cap_); ++k) {
    const bool za = k > cap_ || comp(k).is_zero();
    const bool zb = k > o.cap_ || o.comp(k).is_zero();
    if (za != zb) return false;
    if (!za && !(comp(k) == o.comp(k))) return false;
  }
  return true;
}

MultiMap nr_composite_at(const DerivationRep& a, const DerivationRep& b,
                         int n) {
  if (!same_space(a.space(), b.space()))
    throw std::invalid_argument("nr_composite: different spaces");
  if (n > a.cap() || n > b.cap())
    throw std::out_of_range("nr_composite: arity beyond cap requested");
  const GradedSpace& w = *a.space();
  MultiMap out(a.space(), a.space(), n, a.degree() + b.degree());

  // Collect candidate output monomials from entry pairs, then evaluate the
  // defining sum on each candidate once.
  std::set<Monomial> candidates;
  for (int l = 1; l <= std::min(n, b.cap()); ++l) {
    const int m = n - l + 1;
    if (m > a.cap()) continue;
    for (const auto& [mb, vb] : b.comp(l).entries()) {
      for (const auto& [ka, va] : a.comp(m).entries()) {
        for (const auto& [t, c] : vb.terms()) {
          auto it = std::find(ka.begin(), ka.end(), t);
          if (it == ka.end()) continue;
          Monomial merged = mb;
          for (auto jt = ka.begin(); jt != ka.end(); ++jt)
            if (jt != it) merged.push_back(*jt);
          auto norm = normalize_monomial(merged, w);
          if (norm.sign != 0) candidates.insert(std::move(norm.mono));
        }
      }
    }
  }

  for (const auto& mono : candidates) {
    std::vector<int> deg(mono.size());
    for (std::size_t i = 0; i < mono.size(); ++i) deg[i] = w.degree(mono[i]);
    Element value = Element::zero(a.space());
    for (int l = 1; l <= std::min(n, b.cap()); ++l) {
      const int m = n - l + 1;
      if (m > a.cap()) continue;
      if (b.comp(l).is_zero() || a.comp(m).is_zero()) continue;
      for (const auto& sigma : unshuffles(l, n)) {
        const int eps = koszul_sign(sigma, deg);
        Monomial first(l), rest(n - l);
        for (int i = 0; i < l; ++i) first[i] = mono[sigma[i]];
        for (int i = l; i < n; ++i) rest[i - l] = mono[sigma[i]];
        Element inner = b.comp(l).eval_basis(first);
        if (inner.is_zero()) continue;
        value.add_scaled(eps, a.comp(m).eval_first(inner, rest));
      }
    }
    if (!value.is_zero()) out.add_entry(mono, value);
  }
  return out;
}

DerivationRep nr_composite(const DerivationRep& a, const DerivationRep& b) {
  const int cap = std::min(a.cap(), b.cap());
  DerivationRep out(a.space(), a.degree() + b.degree(), cap);
  for (int n = 1; n <= cap; ++n)
    out.comp(n).add_scaled(1, nr_composite_at(a, b, n));
  return out;
}

DerivationRep derivation_bracket(const DerivationRep& a,
                                 const DerivationRep& b) {
  DerivationRep out = nr_composite(a, b);
  const int sign = ((a.degree() * b.degree()) & 1) ? 1 : -1;
  DerivationRep rev = nr_composite(b, a);
  out.add_scaled(sign, rev);
  return out;
}

DerAlgebra::DerAlgebra(SpacePtr w, int cap, const std::string& name)
    : w_(std::move(w)), cap_(cap) {
  std::vector<std::pair<std::string, int>> basis;
  for (int k = 1; k <= cap_; ++k) {
    for (const auto& mono : monomials_of_length(*w_, k)) {
      for (int t = 0; t < w_->dim(); ++t) {
        std::ostringstream sym;
        sym << '(';
        for (std::size_t i = 0; i < mono.size(); ++i) {
          if (i) sym << ' ';
          sym << w_->symbol(mono[i]);
        }
        sym << "->" << w_->symbol(t) << ')';
        const int deg = w_->degree(t) - monomial_degree(mono, *w_);
        index_[{mono, t}] = static_cast<int>(basis.size());
        meta_.emplace_back(mono, t);
        basis.emplace_back(sym.str(), deg);
      }
    }
  }
  flat_ = make_space(name, std::move(basis));
}

int DerAlgebra::flat_index(const Monomial& mono, int out) const {
  auto it = index_.find({mono, out});
  return it == index_.end() ? -1 : it->second;
}

const std::pair<Monomial, int>& DerAlgebra::meta(int flat_idx) const {
  return meta_.at(flat_idx);
}

Element DerAlgebra::flatten(const DerivationRep& d) const {
  if (!same_space(d.space(), w_))
    throw std::invalid_argument("DerAlgebra::flatten: wrong space");
  Element out = Element::zero(flat_);
  for (int k = 1; k <= std::min(cap_, d.cap()); ++k)
    for (const auto& [m, v] : d.comp(k).entries())
      for (const auto& [t, c] : v.terms()) out.add_term(flat_index(m, t), c);
  for (int k = cap_ + 1; k <= d.cap(); ++k)
    if (!d.comp(k).is_zero())
      throw std::invalid_argument("DerAlgebra::flatten: cap exceeded");
  return out;
}

std::vector<DerivationRep> DerAlgebra::parts(const Element& e) const {
  std::map<int, DerivationRep> by_degree;
  for (const auto& [i, c] : e.terms()) {
    const auto& [mono, t] = meta_.at(i);
    const int deg = flat_->degree(i);
    auto it = by_degree.find(deg);
    if (it == by_degree.end())
      it = by_degree.emplace(deg, DerivationRep(w_, deg, cap_)).first;
    Element val = Element::zero(w_);
    val.add_term(t, c);
    it->second.comp(static_cast<int>(mono.size())).add_entry(mono, val);
  }
  std::vector<DerivationRep> out;
  out.reserve(by_degree.size());
  for (auto& [d, rep] : by_degree) out.push_back(std::move(rep));
  return out;
}

Element DerAlgebra::bracket(const Element& a, const Element& b) const {
  Element out = Element::zero(flat_);
  for (const auto& pa : parts(a))
    for (const auto& pb : parts(b))
      out += flatten(derivation_bracket(pa, pb));
  return out;
}

}  // namespace linfty
