#include "minkval/linalg.hpp"

#include <utility>

#include "minkval/errors.hpp"

namespace minkval {

std::vector<double> to_doubles(const RPoint& p) {
  std::vector<double> out;
  out.reserve(p.dim());
  for (const auto& c : p.coords()) out.push_back(c.get_d());
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::span<const RPoint> rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows[0].dim());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].dim() != m.cols_) throw DimensionMismatch("matrix rows differ in length");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RPoint Matrix::row(std::size_t r) const {
  RPoint out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
  return out;
}

RPoint Matrix::apply(const RPoint& x) const {
  if (x.dim() != cols_) throw DimensionMismatch("matrix/vector dimensions differ");
  RPoint out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
    out[r] = s;
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product dimensions differ");
  Matrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (sgn((*this)(i, k)) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += (*this)(i, k) * o(k, j);
    }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Rational determinant(Matrix m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m(r, col)) == 0) continue;
      const Rational f = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

std::size_t rank(Matrix m) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (sgn(m(i, col)) == 0) continue;
      const Rational f = m(i, col) / m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(i, c) -= f * m(r, c);
    }
    ++r;
  }
  return r;
}

std::size_t rank(std::span<const RPoint> vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(vectors));
}

std::vector<Rational> solve_fraction_free(const Matrix& a, std::span<const Rational> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionMismatch("solve: system is not square");
  // Clear denominators row by row; the augmented system becomes integral.
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    Integer l = b[r].get_den();
    for (std::size_t c = 0; c < n; ++c) l = lcm(l, a(r, c).get_den());
    for (std::size_t c = 0; c < n; ++c) m[r][c] = a(r, c).get_num() * (l / a(r, c).get_den());
    m[r][n] = b[r].get_num() * (l / b[r].get_den());
  }
  // Bareiss: every division below is exact.
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) throw DegenerateInput("solve: singular system");
    if (pivot != k) std::swap(m[pivot], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s(m[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) s -= Rational(m[i][j]) * x[j];
    x[i] = s / Rational(m[i][i]);
  }
  return x;
}

std::vector<Rational> interpolate(std::span<const Rational> nodes, std::span<const Rational> values) {
  const std::size_t k = nodes.size();
  if (values.size() != k) throw DimensionMismatch("interpolate: node/value count differs");
  Matrix v(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    Rational p = 1;
    for (std::size_t j = 0; j < k; ++j) {
      v(i, j) = p;
      p *= nodes[i];
    }
  }
  return solve_fraction_free(v, values);
}

Rational evaluate_polynomial(std::span<const Rational> coeffs, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace minkval
