#pragma once

#include "minkval/directions.hpp"
#include "minkval/operators.hpp"

namespace minkval::detail {

/// Structural equality in exact mode; sampled support distance within the
/// tolerance otherwise.
inline bool same_body(const Polytope& a, const Polytope& b, const EvalMode& mode) {
  if (mode.is_exact()) return a == b;
  if (a.ambient_dim() != b.ambient_dim()) return false;
  const auto dirs = comparison_directions(a.ambient_dim());
  return hausdorff_lower(a, b, dirs) <= mode.tolerance;
}

/// Equality in exact mode; |a - b| <= tol * max(1, |a|, |b|) otherwise.
inline bool same_value(const Rational& a, const Rational& b, const EvalMode& mode) {
  if (mode.is_exact()) return a == b;
  const double scale = std::max({1.0, std::abs(to_double(a)), std::abs(to_double(b))});
  return std::abs(to_double(a - b)) <= mode.tolerance * scale;
}

/// a <= b, up to the tolerance in approximate mode.
inline bool at_most(const Rational& a, const Rational& b, const EvalMode& mode) {
  if (mode.is_exact()) return a <= b;
  const double scale = std::max({1.0, std::abs(to_double(a)), std::abs(to_double(b))});
  return to_double(a - b) <= mode.tolerance * scale;
}

}  // namespace minkval::detail
