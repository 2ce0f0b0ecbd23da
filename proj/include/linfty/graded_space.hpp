#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

/// A finite ordered basis with integer cohomological degrees. The basis
/// order is part of the canonical form of every monomial built on top of
/// the space. Spaces are immutable after construction.
class GradedSpace {
 public:
  GradedSpace(std::string base_name,
              std::vector<std::pair<std::string, int>> basis, int shift = 0);

  const std::string& base_name() const { return base_; }
  int shift() const { return shift_; }
  std::string name() const;

  int dim() const { return static_cast<int>(symbols_.size()); }
  int degree(int i) const { return degrees_.at(i); }
  const std::string& symbol(int i) const { return symbols_.at(i); }
  /// Index of a basis symbol, or -1 when absent.
  int index_of(const std::string& sym) const;

  const std::vector<int>& degrees() const { return degrees_; }

  bool operator==(const GradedSpace& o) const;
  bool operator!=(const GradedSpace& o) const { return !(*this == o); }

 private:
  std::string base_;
  int shift_;
  std::vector<std::string> symbols_;
  std::vector<int> degrees_;  // degrees after the shift is applied
  std::map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

SpacePtr make_space(std::string name,
                    std::vector<std::pair<std::string, int>> basis);

/// g[n]: same basis symbols, degrees lowered by n. Shifting by n and then
/// by -n returns a space structurally equal to the original.
SpacePtr shift_space(const SpacePtr& s, int n);

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Sparse vector in a GradedSpace with exact rational coefficients. Zero
/// coefficients are never stored.
class Element {
 public:
  Element() = default;
  explicit Element(SpacePtr space) : space_(std::move(space)) {}

  static Element basis(SpacePtr space, int i);
  static Element zero(SpacePtr space) { return Element(std::move(space)); }

  const SpacePtr& space() const { return space_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<int, Rat>& terms() const { return terms_; }

  /// Degree when homogeneous and nonzero; nullopt for zero or mixed.
  std::optional<int> degree() const;
  bool homogeneous_of(int d) const;

  Rat coeff(int i) const;
  void add_term(int i, const Rat& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& scale(const Rat& c);
  Element& add_scaled(const Rat& c, const Element& o);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rat& c, Element a) { return a.scale(c); }

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  std::string str() const;

 private:
  SpacePtr space_;
  std::map<int, Rat> terms_;
};

/// Degree relabelling x -> x[n]; coefficients are untouched.
Element shift_element(const Element& x, int n);

}  // namespace linfty
