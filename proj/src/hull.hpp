#pragma once

// Exact convex hull kernel shared by the polytope operations.
//
// Points are first reduced to their affine hull: an echelon basis of the
// direction space selects r pivot coordinates, and projecting onto them is an
// affine bijection from aff(points) onto Q^r. The projected coordinates are
// scaled by a common denominator to integers, and the hull is built there by
// incremental insertion with outside sets over a simplicial boundary.
// Coplanar points are treated as not visible, so the boundary triangulation
// stays valid on degenerate (non-simplicial) inputs. When every scaled
// coordinate fits in 24 bits and r <= 4 the kernel runs on __int128 (facet
// normals stay below 2^78 and incidence products below 2^104); otherwise on GMP
// integers.

#include <cstddef>
#include <span>
#include <vector>

#include "minkval/point.hpp"
#include "minkval/rational.hpp"

namespace minkval::detail {

using IVec = std::vector<Integer>;

struct AffineFrame {
  int rank = 0;
  RPoint base;
  std::vector<std::size_t> pivots;    // coordinate index selected by each basis row
  std::vector<RPoint> basis;          // echelon rows spanning the direction space
  std::vector<std::size_t> spanning;  // indices of points that raised the rank

  bool contains(const RPoint& x) const;
  std::vector<Rational> project(const RPoint& x) const;
};

AffineFrame affine_frame(std::span<const RPoint> points);

/// Outward facet inequality <normal, y> <= offset in scaled projected coordinates.
struct Plane {
  IVec normal;
  Integer offset;
  friend bool operator<(const Plane& a, const Plane& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
  friend bool operator==(const Plane&, const Plane&) = default;
};

struct SimplexFacet {
  std::vector<std::size_t> vertices;  // r point indices
  Plane plane;                        // not necessarily primitive
};

struct Hull {
  AffineFrame frame;
  Integer scale = 1;                      // projected coordinates times scale are integral
  std::vector<IVec> coords;               // scaled projected coordinates per input point
  std::vector<SimplexFacet> triangulation;  // boundary simplices (rank >= 2)
  std::vector<Plane> planes;              // distinct facet planes, primitive normals (rank >= 1)
  std::vector<std::size_t> extreme;       // indices of extreme points, ascending

  int rank() const { return frame.rank; }
  /// Scaled projected coordinates of an arbitrary point of the affine hull.
  std::vector<Rational> scaled_projection(const RPoint& x) const;
  bool contains(const RPoint& x) const;
};

/// Hull of pairwise distinct points.
Hull build_hull(std::span<const RPoint> points);

Integer idot(const IVec& a, const IVec& b);

}  // namespace minkval::detail
