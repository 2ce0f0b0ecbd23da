#pragma once

#include <optional>
#include <vector>

#include "linfty/graded_space.hpp"

namespace linfty {

/// Dense exact-rational matrix, just enough for echelon bases and solving
/// the small linear systems the constructions need.
class RatMatrix {
 public:
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows, std::vector<Rat>(cols, Rat(0))) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return a_[r][c]; }
  const Rat& at(int r, int c) const { return a_[r][c]; }

  /// Row-reduce in place; returns pivot column per row.
  std::vector<int> rref();

 private:
  int rows_, cols_;
  std::vector<std::vector<Rat>> a_;
};

/// Columns of `vectors` are expressed over a space of dimension dim.
/// Returns indices into `vectors` forming a basis of their span.
std::vector<int> independent_subset(const std::vector<Element>& vectors, int dim);

/// Solve sum_j x_j * vectors[j] = target exactly; nullopt when unsolvable.
std::optional<std::vector<Rat>> solve_in_span(const std::vector<Element>& vectors,
                                              const Element& target, int dim);

}  // namespace linfty
