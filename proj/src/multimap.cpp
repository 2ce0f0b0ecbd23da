#include "linfty/multimap.hpp"

#include <stdexcept>

namespace linfty {

MultiMap::MultiMap(SpacePtr source, SpacePtr target, int arity, int degree)
    : source_(std::move(source)),
      target_(std::move(target)),
      arity_(arity),
      degree_(degree) {
  if (arity_ < 1) throw std::invalid_argument("MultiMap arity must be >= 1");
}

void MultiMap::add_entry(const Monomial& mono, const Element& value) {
  if (static_cast<int>(mono.size()) != arity_)
    throw std::invalid_argument("MultiMap::add_entry: arity mismatch");
  if (value.is_zero()) return;
  auto norm = normalize_monomial(mono, *source_);
  if (norm.sign == 0) return;
  const int want = monomial_degree(norm.mono, *source_) + degree_;
  if (!value.homogeneous_of(want))
    throw std::invalid_argument(
        "MultiMap::add_entry: value not homogeneous of required degree");
  auto it = entries_.find(norm.mono);
  if (it == entries_.end()) {
    Element v = value;
    v.scale(norm.sign);
    if (!v.is_zero()) entries_.emplace(std::move(norm.mono), std::move(v));
  } else {
    it->second.add_scaled(norm.sign, value);
    if (it->second.is_zero()) entries_.erase(it);
  }
}

Element MultiMap::eval_basis(const Monomial& args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("MultiMap::eval_basis: arity mismatch");
  auto norm = normalize_monomial(args, *source_);
  Element out = Element::zero(target_);
  if (norm.sign == 0) return out;
  auto it = entries_.find(norm.mono);
  if (it == entries_.end()) return out;
  out.add_scaled(norm.sign, it->second);
  return out;
}

Element MultiMap::eval(std::span<const Element> args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("MultiMap::eval: arity mismatch");
  for (const auto& a : args)
    if (!a.is_zero() && !same_space(a.space(), source_))
      throw std::invalid_argument("MultiMap::eval: wrong space");
  Element out = Element::zero(target_);
  Monomial idx(arity_);
  Rat coeff;
  std::function<void(int, const Rat&)> rec = [&](int slot, const Rat& c) {
    if (slot == arity_) {
      out.add_scaled(c, eval_basis(idx));
      return;
    }
    for (const auto& [i, v] : args[slot].terms()) {
      idx[slot] = i;
      Rat cv = c * v;
      rec(slot + 1, cv);
    }
  };
  rec(0, Rat(1));
  return out;
}

Element MultiMap::eval_first(const Element& first, const Monomial& rest) const {
  if (static_cast<int>(rest.size()) + 1 != arity_)
    throw std::invalid_argument("MultiMap::eval_first: arity mismatch");
  Element out = Element::zero(target_);
  Monomial idx(arity_);
  std::copy(rest.begin(), rest.end(), idx.begin() + 1);
  for (const auto& [i, v] : first.terms()) {
    idx[0] = i;
    out.add_scaled(v, eval_basis(idx));
  }
  return out;
}

MultiMap& MultiMap::add_scaled(const Rat& c, const MultiMap& o) {
  if (o.arity_ != arity_ || o.degree_ != degree_ ||
      !same_space(o.source_, source_) || !same_space(o.target_, target_))
    throw std::invalid_argument("MultiMap::add_scaled: shape mismatch");
  if (c == 0) return *this;
  for (const auto& [m, v] : o.entries_) {
    auto it = entries_.find(m);
    if (it == entries_.end()) {
      Element nv = v;
      nv.scale(c);
      if (!nv.is_zero()) entries_.emplace(m, std::move(nv));
    } else {
      it->second.add_scaled(c, v);
      if (it->second.is_zero()) entries_.erase(it);
    }
  }
  return *this;
}

bool MultiMap::operator==(const MultiMap& o) const {
  return arity_ == o.arity_ && degree_ == o.degree_ &&
         same_space(source_, o.source_) && same_space(target_, o.target_) &&
         entries_ == o.entries_;
}

}  // namespace linfty
