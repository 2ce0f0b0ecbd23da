#include "linfty/graded_space.hpp"

#include <sstream>
#include <stdexcept>

namespace linfty {

GradedSpace::GradedSpace(std::string base_name,
                         std::vector<std::pair<std::string, int>> basis,
                         int shift)
    : base_(std::move(base_name)), shift_(shift) {
  symbols_.reserve(basis.size());
  degrees_.reserve(basis.size());
  for (auto& [sym, deg] : basis) {
    if (index_.count(sym))
      throw std::invalid_argument("duplicate basis symbol '" + sym +
                                  "' in space " + base_);
    index_[sym] = static_cast<int>(symbols_.size());
    symbols_.push_back(sym);
    degrees_.push_back(deg);
  }
}

std::string GradedSpace::name() const {
  if (shift_ == 0) return base_;
  std::ostringstream os;
  os << base_ << '[' << shift_ << ']';
  return os.str();
}

int GradedSpace::index_of(const std::string& sym) const {
  auto it = index_.find(sym);
  return it == index_.end() ? -1 : it->second;
}

bool GradedSpace::operator==(const GradedSpace& o) const {
  return base_ == o.base_ && shift_ == o.shift_ && symbols_ == o.symbols_ &&
         degrees_ == o.degrees_;
}

SpacePtr make_space(std::string name,
                    std::vector<std::pair<std::string, int>> basis) {
  return std::make_shared<GradedSpace>(std::move(name), std::move(basis));
}

SpacePtr shift_space(const SpacePtr& s, int n) {
  std::vector<std::pair<std::string, int>> basis;
  basis.reserve(s->dim());
  for (int i = 0; i < s->dim(); ++i)
    basis.emplace_back(s->symbol(i), s->degree(i) - n);
  return std::make_shared<GradedSpace>(s->base_name(), std::move(basis),
                                       s->shift() + n);
}

Element Element::basis(SpacePtr space, int i) {
  Element e(std::move(space));
  if (i < 0 || i >= e.space_->dim())
    throw std::out_of_range("basis index out of range");
  e.terms_[i] = 1;
  return e;
}

std::optional<int> Element::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = space_->degree(terms_.begin()->first);
  for (const auto& [i, c] : terms_)
    if (space_->degree(i) != d) return std::nullopt;
  return d;
}

bool Element::homogeneous_of(int d) const {
  for (const auto& [i, c] : terms_)
    if (space_->degree(i) != d) return false;
  return true;
}

Rat Element::coeff(int i) const {
  auto it = terms_.find(i);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Element::add_term(int i, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(i);
  if (it == terms_.end()) {
    terms_.emplace(i, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  if (!space_) space_ = o.space_;
  for (const auto& [i, c] : o.terms_) add_term(i, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (!space_) space_ = o.space_;
  for (const auto& [i, c] : o.terms_) add_term(i, -c);
  return *this;
}

Element& Element::scale(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, v] : terms_) v *= c;
  return *this;
}

Element& Element::add_scaled(const Rat& c, const Element& o) {
  if (!space_) space_ = o.space_;
  if (c == 0) return *this;
  for (const auto& [i, v] : o.terms_) {
    Rat cv = c * v;
    add_term(i, cv);
  }
  return *this;
}

bool Element::operator==(const Element& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  return same_space(space_, o.space_) && terms_ == o.terms_;
}

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << ' ' << space_->symbol(i);
  }
  return os.str();
}

Element shift_element(const Element& x, int n) {
  Element out(shift_space(x.space(), n));
  for (const auto& [i, c] : x.terms()) out.add_term(i, c);
  return out;
}

}  // namespace linfty
