#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "minkval/polytope.hpp"

namespace minkval {

/// Relative weights of the generator families in a random corpus.
struct KindMix {
  double random_hull = 1.0;
  double zonotope = 1.0;
  double simplex_like = 1.0;
  double symmetric = 1.0;
};

enum class BodyKind { RandomHull, Zonotope, SimplexLike, Symmetric };

struct CorpusSpec {
  int dim = 2;
  int count = 1;
  std::uint64_t seed = 0;
  KindMix mix{};

  /// Throws InvalidArgument on count < 1, bad dimension, or unusable weights.
  void validate() const;
};

/// Centered segment S_v = [-v, v].
class SegmentSpec {
 public:
  explicit SegmentSpec(RPoint v) : v_(std::move(v)) {
    if (v_.is_zero()) throw InvalidArgument("segment generator must be nonzero");
  }
  const RPoint& v() const { return v_; }

 private:
  RPoint v_;
};

Polytope segment(const RPoint& v);
/// conv{0, e_1, ..., e_n}
Polytope simplex(int n);
/// [0,1]^n
Polytope unit_cube(int n);
/// conv{±e_i}
Polytope cross_polytope(int n);
/// Sum of the centered segments S_{v_i}. Note the factor 2^k in volume
/// relative to sums of [0, v_i].
Polytope zonotope(std::span<const SegmentSpec> gens);
/// Zonotope of exactly n linearly independent generators (a parallelotope).
Polytope cube_from_segments(std::span<const SegmentSpec> gens);

BodyKind pick_kind(const CorpusSpec& spec, std::size_t index);
/// Deterministic full-dimensional body number `index` of the corpus.
/// Coordinates are small rationals with denominators dividing 16.
Polytope random_polytope(const CorpusSpec& spec, std::size_t index);
std::vector<Polytope> make_corpus(const CorpusSpec& spec);

/// Random body of affine dimension exactly `d` (0 <= d <= n) in R^n.
Polytope random_flat_polytope(int n, int d, std::uint64_t seed);

/// Random nonzero integer generators in R^n.
std::vector<SegmentSpec> random_generators(int n, int count, std::uint64_t seed);

struct SlicePair {
  Hyperplane cut;
  Polytope upper;   // K
  Polytope lower;   // L
  Polytope middle;  // M = K ∩ L

  friend bool operator==(const SlicePair&, const SlicePair&) = default;
};

/// Slices a full-dimensional body by a random hyperplane through a random
/// interior point. Throws DegenerateInput after a bounded number of failed
/// attempts.
SlicePair random_slice_pair(const Polytope& p, std::uint64_t seed);

}  // namespace minkval
