#include "levelcontract/linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace levelcontract {

void Matrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<std::size_t> reduced_row_echelon(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
    }
    const Rational scale = m.at(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) /= scale;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const Rational factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        m.at(r, c) -= factor * m.at(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return reduced_row_echelon(m).size(); }

std::vector<std::vector<Rational>> kernel_basis(const Matrix& input) {
  Matrix m = input;
  const std::vector<std::size_t> pivots = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t col : pivots) is_pivot[col] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> vec(m.cols(), Rational(0));
    vec[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      vec[pivots[k]] = -m.at(k, free);
    }
    basis.push_back(std::move(vec));
  }
  return basis;
}

}  // namespace levelcontract
