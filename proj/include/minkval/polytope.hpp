#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "minkval/linalg.hpp"
#include "minkval/point.hpp"
#include "minkval/rational.hpp"

namespace minkval {

/// Ambient dimension cap, read from MINKVAL_MAX_DIM (default 4).
int max_ambient_dim();

/// A convex polytope in Q^n stored by its extreme points, sorted
/// lexicographically. Two polytopes are geometrically equal iff they are
/// structurally equal.
class Polytope {
 public:
  /// Smallest representable body: the origin of R^n.
  explicit Polytope(int ambient_dim);

  int ambient_dim() const { return dim_; }
  const std::vector<RPoint>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  friend bool operator==(const Polytope&, const Polytope&) = default;
  friend bool operator<(const Polytope& a, const Polytope& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    return a.vertices_ < b.vertices_;
  }

 private:
  friend Polytope canonicalize(std::span<const RPoint> points, int n);
  Polytope(int n, std::vector<RPoint> vertices) : dim_(n), vertices_(std::move(vertices)) {}

  int dim_;
  std::vector<RPoint> vertices_;
};

/// {x : <normal, x> = offset}
struct Hyperplane {
  RPoint normal;
  Rational offset;

  Hyperplane(RPoint n, Rational b);
  /// Signed value <normal, x> - offset.
  Rational eval(const RPoint& x) const { return dot(normal, x) - offset; }
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// A facet of a full-dimensional polytope. The normal points outward and is
/// a primitive integer vector, so every vertex v satisfies <normal, v> <= offset.
struct Facet {
  Hyperplane plane;
  std::vector<std::size_t> vertex_indices;
};

/// Extreme points of conv(points), sorted.
Polytope canonicalize(std::span<const RPoint> points, int n);
inline Polytope canonicalize(const std::vector<RPoint>& points, int n) {
  return canonicalize(std::span<const RPoint>(points), n);
}
Polytope point_body(const RPoint& p);

int affine_dim(const Polytope& p);

Rational support(const Polytope& p, const RPoint& u);
inline Rational support(const Polytope& p, const Direction& u) { return support(p, u.vector()); }

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope minkowski_sum(std::span<const Polytope> bodies);
Polytope scale(const Polytope& p, const Rational& lambda);
Polytope reflect(const Polytope& p);
Polytope translate(const Polytope& p, const RPoint& t);
Polytope linear_image(const Polytope& p, const Matrix& m);
/// Convex hull of the union.
Polytope hull_union(const Polytope& p, const Polytope& q);

/// Exact n-dimensional volume; zero for lower-dimensional bodies.
Rational volume(const Polytope& p);

/// Facets of a full-dimensional polytope; throws DegenerateInput otherwise.
std::vector<Facet> facets(const Polytope& p);

/// Vertex index pairs forming the edges (1-faces) of p.
std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p);

struct SliceResult {
  Polytope upper;   // P ∩ {<a,x> >= b}
  Polytope lower;   // P ∩ {<a,x> <= b}
  Polytope middle;  // P ∩ H
};

/// Cuts p by h. Requires a vertex strictly on each side of h.
SliceResult slice(const Polytope& p, const Hyperplane& h);

bool contains_point(const Polytope& p, const RPoint& x);
bool contains(const Polytope& p, const Polytope& q);
bool equal(const Polytope& p, const Polytope& q);

/// max_u |h_P(u) - h_Q(u)| over the normalized sample directions; a lower
/// bound for the Hausdorff distance.
double hausdorff_lower(const Polytope& p, const Polytope& q, std::span<const RPoint> dirs);

/// Affine dimension after treating vertex spreads below `tolerance` as zero
/// (floating rank with full pivoting).
int approx_affine_dim(const Polytope& p, double tolerance);

/// Vertex centroid (an interior point of a full-dimensional body).
RPoint vertex_centroid(const Polytope& p);

}  // namespace minkval
