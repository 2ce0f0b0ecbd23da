#include "linfty/linalg.hpp"

namespace linfty {

std::vector<int> RatMatrix::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int p = -1;
    for (int r = row; r < rows_; ++r)
      if (a_[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(a_[p], a_[row]);
    const Rat inv = Rat(1) / a_[row][col];
    for (int c = col; c < cols_; ++c) a_[row][c] *= inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == row || a_[r][col] == 0) continue;
      const Rat f = a_[r][col];
      for (int c = col; c < cols_; ++c) a_[r][c] -= f * a_[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<int> independent_subset(const std::vector<Element>& vectors,
                                    int dim) {
  RatMatrix m(dim, static_cast<int>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j)
    for (const auto& [i, c] : vectors[j].terms()) m.at(i, static_cast<int>(j)) = c;
  return m.rref();
}

std::optional<std::vector<Rat>> solve_in_span(
    const std::vector<Element>& vectors, const Element& target, int dim) {
  const int n = static_cast<int>(vectors.size());
  RatMatrix m(dim, n + 1);
  for (int j = 0; j < n; ++j)
    for (const auto& [i, c] : vectors[j].terms()) m.at(i, j) = c;
  for (const auto& [i, c] : target.terms()) m.at(i, n) = c;
  auto pivots = m.rref();
  for (int r = 0; r < dim; ++r) {
    bool lhs_zero = true;
    for (int j = 0; j < n; ++j)
      if (m.at(r, j) != 0) lhs_zero = false;
    if (lhs_zero && m.at(r, n) != 0) return std::nullopt;
  }
  std::vector<Rat> x(n, Rat(0));
  int row = 0;
  for (int col : pivots) {
    if (col < n) x[col] = m.at(row, n);
    ++row;
  }
  return x;
}

}  // namespace linfty
