#include "minkval/mixed_volume.hpp"

#include <algorithm>
#include <string>

#include "minkval/errors.hpp"

namespace minkval {
namespace {

// Dimension of the direction space spanned jointly by the given bodies;
// equals affine_dim of their Minkowski sum.
std::size_t joint_dim(const MixedVolumeQuery& q, unsigned mask) {
  std::vector<RPoint> dirs;
  for (std::size_t i = 0; i < q.bodies.size(); ++i) {
    if (!(mask & (1U << i))) continue;
    const auto& vs = q.bodies[i].vertices();
    for (std::size_t k = 1; k < vs.size(); ++k) dirs.push_back(vs[k] - vs[0]);
  }
  return rank(std::span<const RPoint>(dirs));
}

}  // namespace

int MixedVolumeQuery::dim() const { return bodies.empty() ? 0 : bodies[0].ambient_dim(); }

void MixedVolumeQuery::validate() const {
  if (bodies.empty()) throw DimensionMismatch("mixed volume query is empty");
  const int n = dim();
  if (bodies.size() != static_cast<std::size_t>(n)) {
    throw DimensionMismatch("mixed volume in R^" + std::to_string(n) + " needs " + std::to_string(n) +
                            " bodies, got " + std::to_string(bodies.size()));
  }
  for (const auto& b : bodies)
    if (b.ambient_dim() != n) throw DimensionMismatch("mixed volume bodies differ in dimension");
}

Rational MixedVolumeCalculator::sum_volume(std::vector<Polytope> summands) {
  std::sort(summands.begin(), summands.end());
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(summands); it != cache_.end()) return it->second;
  }
  Rational v = volume(minkowski_sum(summands));
  std::lock_guard lock(mutex_);
  cache_.emplace(std::move(summands), v);
  return v;
}

std::size_t MixedVolumeCalculator::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

Rational MixedVolumeCalculator::mixed_volume(const MixedVolumeQuery& q) {
  q.validate();
  const auto n = static_cast<unsigned>(q.dim());
  Rational total = 0;
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    std::vector<Polytope> summands;
    for (unsigned i = 0; i < n; ++i)
      if (mask & (1U << i)) summands.push_back(q.bodies[i]);
    const auto size = static_cast<unsigned>(summands.size());
    const Rational v = sum_volume(std::move(summands));
    if ((n - size) % 2 == 0)
      total += v;
    else
      total -= v;
  }
  return total / Rational(factorial(n));
}

Rational mixed_volume(const MixedVolumeQuery& q) {
  MixedVolumeCalculator calc;
  return calc.mixed_volume(q);
}

bool positivity_criterion(const MixedVolumeQuery& q) {
  q.validate();
  const auto n = static_cast<unsigned>(q.dim());
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (joint_dim(q, mask) < k) return false;
  }
  return true;
}

bool positivity_equivalence_check(const MixedVolumeQuery& q) {
  return (sgn(mixed_volume(q)) > 0) == positivity_criterion(q);
}

Rational zonotope_volume_fast(std::span<const SegmentSpec> gens) {
  if (gens.empty()) return 0;
  const std::size_t n = gens[0].v().dim();
  for (const auto& g : gens)
    if (g.v().dim() != n) throw DimensionMismatch("zonotope generators differ in dimension");
  if (gens.size() < n) return 0;
  Rational total = 0;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  // lexicographic n-combinations of the generators
  while (true) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = gens[idx[r]].v()[c];
    total += abs(determinant(std::move(m)));
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == gens.size() - n + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  Integer two_n;
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, n);
  return total * Rational(two_n);
}

std::vector<Rational> mixed_volume_profile(const Polytope& k, const Polytope& l) {
  if (k.ambient_dim() != l.ambient_dim()) throw DimensionMismatch("profile: bodies differ in dimension");
  const auto n = static_cast<std::size_t>(k.ambient_dim());
  MixedVolumeCalculator calc;
  std::vector<Rational> out;
  for (std::size_t j = 0; j <= n; ++j) {
    MixedVolumeQuery q;
    for (std::size_t i = 0; i < n - j; ++i) q.bodies.push_back(k);
    for (std::size_t i = 0; i < j; ++i) q.bodies.push_back(l);
    out.push_back(calc.mixed_volume(q));
  }
  return out;
}

bool expansion_check(const Polytope& k, const Polytope& l, int tmax) {
  const auto n = static_cast<unsigned>(k.ambient_dim());
  const auto profile = mixed_volume_profile(k, l);
  for (int t = 1; t <= tmax; ++t) {
    const Rational lhs = volume(minkowski_sum(k, scale(l, t)));
    Rational rhs = 0;
    for (unsigned j = 0; j <= n; ++j)
      rhs += Rational(binomial(n, j)) * pow(Rational(t), j) * profile[j];
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace minkval
