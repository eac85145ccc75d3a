#pragma once

#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "minkval/body_zoo.hpp"
#include "minkval/polytope.hpp"

namespace minkval {

/// V(K_1, ..., K_n) query; callers expand repeated entries K[i] themselves.
struct MixedVolumeQuery {
  std::vector<Polytope> bodies;

  int dim() const;
  /// Throws DimensionMismatch unless there are exactly n bodies, all in R^n.
  void validate() const;
};

/// Memoizes the volume of Minkowski sums keyed by the multiset of summands.
/// The cache only stores values computed exactly, so a shared instance never
/// changes results; access is serialized.
class MixedVolumeCalculator {
 public:
  Rational mixed_volume(const MixedVolumeQuery& q);
  Rational sum_volume(std::vector<Polytope> summands);
  std::size_t cache_size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::vector<Polytope>, Rational> cache_;
};

/// (1/n!) sum over nonempty J of (-1)^{n-|J|} V_n(sum_{j in J} K_j).
Rational mixed_volume(const MixedVolumeQuery& q);

/// For every nonempty index subset, dim(K_{i_1} + ... + K_{i_k}) >= k.
bool positivity_criterion(const MixedVolumeQuery& q);

/// (mixed_volume(q) > 0) == positivity_criterion(q).
bool positivity_equivalence_check(const MixedVolumeQuery& q);

/// 2^n sum over n-subsets of |det(v_{i_1}, ..., v_{i_n})| for centered generators.
Rational zonotope_volume_fast(std::span<const SegmentSpec> gens);

/// V_n(K + tL) == sum_k C(n,k) t^k V(K[n-k], L[k]) for t = 1..tmax.
bool expansion_check(const Polytope& k, const Polytope& l, int tmax);

/// V(K[n-k], L[k]) for k = 0..n.
std::vector<Rational> mixed_volume_profile(const Polytope& k, const Polytope& l);

}  // namespace minkval
