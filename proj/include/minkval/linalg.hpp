#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "minkval/point.hpp"
#include "minkval/rational.hpp"

namespace minkval {

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const RPoint> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RPoint row(std::size_t r) const;
  RPoint apply(const RPoint& x) const;
  Matrix operator*(const Matrix& o) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational determinant(Matrix m);
std::size_t rank(Matrix m);
std::size_t rank(std::span<const RPoint> vectors);

/// Solves A x = b for square nonsingular A by fraction-free (Bareiss)
/// elimination on the denominator-cleared integer system.
/// Throws DegenerateInput if A is singular.
std::vector<Rational> solve_fraction_free(const Matrix& a, std::span<const Rational> b);

/// Exact polynomial interpolation: coefficients c_0..c_{k-1} with
/// sum_j c_j x_i^j = y_i for the k given nodes.
std::vector<Rational> interpolate(std::span<const Rational> nodes, std::span<const Rational> values);

Rational evaluate_polynomial(std::span<const Rational> coeffs, const Rational& x);

}  // namespace minkval
