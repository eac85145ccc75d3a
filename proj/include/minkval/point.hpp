#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "minkval/errors.hpp"
#include "minkval/rational.hpp"

namespace minkval {

/// Exact coordinate vector in Q^n.
class RPoint {
 public:
  RPoint() = default;
  explicit RPoint(std::size_t dim) : coords_(dim) {}
  explicit RPoint(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  RPoint(std::initializer_list<Rational> coords) : coords_(coords) {}

  static RPoint unit(std::size_t dim, std::size_t axis) {
    RPoint e(dim);
    e[axis] = 1;
    return e;
  }

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Rational& c) { return sgn(c) == 0; });
  }

  RPoint& operator+=(const RPoint& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  RPoint& operator-=(const RPoint& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  RPoint& operator*=(const Rational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend RPoint operator+(RPoint a, const RPoint& b) { return a += b; }
  friend RPoint operator-(RPoint a, const RPoint& b) { return a -= b; }
  friend RPoint operator*(RPoint a, const Rational& s) { return a *= s; }
  friend RPoint operator*(const Rational& s, RPoint a) { return a *= s; }
  friend RPoint operator-(RPoint a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }

  friend bool operator==(const RPoint& a, const RPoint& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const RPoint& a, const RPoint& b) { return !(a == b); }
  /// Lexicographic order; defines the canonical vertex ordering.
  friend bool operator<(const RPoint& a, const RPoint& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }

 private:
  void check_same_dim(const RPoint& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("point dimensions differ");
  }

  std::vector<Rational> coords_;
};

inline Rational dot(const RPoint& a, const RPoint& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("dot: point dimensions differ");
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

/// Nonzero vector used as the argument of a support function.
class Direction {
 public:
  explicit Direction(RPoint v) : v_(std::move(v)) {
    if (v_.is_zero()) throw InvalidArgument("direction must be nonzero");
  }
  const RPoint& vector() const { return v_; }
  std::size_t dim() const { return v_.dim(); }
  Direction operator-() const { return Direction(-v_); }

 private:
  RPoint v_;
};

std::vector<double> to_doubles(const RPoint& p);

}  // namespace minkval
