#pragma once

#include <cstddef>
#include <vector>

#include "levelcontract/rational.hpp"

namespace levelcontract {

// Dense rational matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<Rational>& row);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<std::size_t> reduced_row_echelon(Matrix& m);

std::size_t rank(Matrix m);

// Basis of the right kernel {x : Mx = 0}; one vector per free column, with a
// 1 in that column, in ascending column order.
std::vector<std::vector<Rational>> kernel_basis(const Matrix& m);

}  // namespace levelcontract
