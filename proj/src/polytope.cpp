#include "minkval/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "hull.hpp"
#include "minkval/errors.hpp"

namespace minkval {

using detail::build_hull;
using detail::Hull;

int max_ambient_dim() {
  static const int cap = [] {
    const char* env = std::getenv("MINKVAL_MAX_DIM");
    if (env == nullptr || *env == '\0') return 4;
    const int v = std::atoi(env);
    return v >= 1 ? v : 4;
  }();
  return cap;
}

namespace {

void check_dim(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) {
    throw DimensionMismatch("bodies live in R^" + std::to_string(p.ambient_dim()) + " and R^" +
                            std::to_string(q.ambient_dim()));
  }
}

Polytope from_map(const Polytope& p, auto&& f) {
  std::vector<RPoint> pts;
  pts.reserve(p.size());
  for (const auto& v : p.vertices()) pts.push_back(f(v));
  return canonicalize(pts, p.ambient_dim());
}

Hull hull_of(const Polytope& p) { return build_hull(p.vertices()); }

}  // namespace

Polytope::Polytope(int ambient_dim) : dim_(ambient_dim) {
  if (ambient_dim < 1) throw InvalidArgument("ambient dimension must be >= 1");
  vertices_.emplace_back(static_cast<std::size_t>(ambient_dim));
}

Hyperplane::Hyperplane(RPoint n, Rational b) : normal(std::move(n)), offset(std::move(b)) {
  if (normal.is_zero()) throw InvalidArgument("hyperplane normal must be nonzero");
}

Polytope canonicalize(std::span<const RPoint> points, int n) {
  if (points.empty()) throw InvalidArgument("canonicalize: empty point list");
  if (n < 1 || n > max_ambient_dim()) {
    throw InvalidArgument("ambient dimension " + std::to_string(n) + " outside 1.." +
                          std::to_string(max_ambient_dim()));
  }
  for (const auto& p : points) {
    if (p.dim() != static_cast<std::size_t>(n)) {
      throw DimensionMismatch("point of length " + std::to_string(p.dim()) + " in R^" +
                              std::to_string(n));
    }
  }
  std::vector<RPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return Polytope(n, std::move(pts));

  const Hull h = build_hull(pts);
  std::vector<RPoint> out;
  out.reserve(h.extreme.size());
  // extreme is ascending in index, and pts is sorted, so out stays sorted
  for (auto i : h.extreme) out.push_back(pts[i]);
  return Polytope(n, std::move(out));
}

Polytope point_body(const RPoint& p) { return canonicalize(std::vector<RPoint>{p}, static_cast<int>(p.dim())); }

int affine_dim(const Polytope& p) { return detail::affine_frame(p.vertices()).rank; }

Rational support(const Polytope& p, const RPoint& u) {
  if (u.dim() != static_cast<std::size_t>(p.ambient_dim()))
    throw DimensionMismatch("support: direction dimension differs from body");
  Rational best = dot(p.vertices()[0], u);
  for (std::size_t i = 1; i < p.size(); ++i) {
    Rational s = dot(p.vertices()[i], u);
    if (s > best) best = std::move(s);
  }
  return best;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  check_dim(p, q);
  std::vector<RPoint> pts;
  pts.reserve(p.size() * q.size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) pts.push_back(a + b);
  return canonicalize(pts, p.ambient_dim());
}

Polytope minkowski_sum(std::span<const Polytope> bodies) {
  if (bodies.empty()) throw InvalidArgument("minkowski_sum of an empty list");
  Polytope acc = bodies[0];
  for (std::size_t i = 1; i < bodies.size(); ++i) acc = minkowski_sum(acc, bodies[i]);
  return acc;
}

Polytope scale(const Polytope& p, const Rational& lambda) {
  if (sgn(lambda) < 0) throw InvalidArgument("scale factor must be nonnegative");
  return from_map(p, [&](const RPoint& v) { return v * lambda; });
}

Polytope reflect(const Polytope& p) {
  return from_map(p, [](const RPoint& v) { return -v; });
}

Polytope translate(const Polytope& p, const RPoint& t) {
  if (t.dim() != static_cast<std::size_t>(p.ambient_dim()))
    throw DimensionMismatch("translate: vector dimension differs from body");
  return from_map(p, [&](const RPoint& v) { return v + t; });
}

Polytope linear_image(const Polytope& p, const Matrix& m) {
  const auto n = static_cast<std::size_t>(p.ambient_dim());
  if (m.rows() != n || m.cols() != n) throw DimensionMismatch("linear_image: matrix must be n x n");
  return from_map(p, [&](const RPoint& v) { return m.apply(v); });
}

Polytope hull_union(const Polytope& p, const Polytope& q) {
  check_dim(p, q);
  std::vector<RPoint> pts = p.vertices();
  pts.insert(pts.end(), q.vertices().begin(), q.vertices().end());
  return canonicalize(pts, p.ambient_dim());
}

Rational volume(const Polytope& p) {
  const auto n = static_cast<std::size_t>(p.ambient_dim());
  if (p.size() < n + 1) return 0;
  const Hull h = hull_of(p);
  if (static_cast<std::size_t>(h.rank()) < n) return 0;
  if (n == 1) {
    return p.vertices().back()[0] - p.vertices().front()[0];
  }
  // Cone over every boundary simplex from a fixed hull vertex.
  const auto& apex = h.coords[h.extreme.front()];
  Integer total = 0;
  Matrix m(n, n);
  for (const auto& f : h.triangulation) {
    for (std::size_t r = 0; r < n; ++r) {
      const auto& x = h.coords[f.vertices[r]];
      for (std::size_t c = 0; c < n; ++c) m(r, c) = Rational(x[c] - apex[c]);
    }
    const Rational d = determinant(m);
    total += abs(d.get_num());
  }
  Integer den = factorial(static_cast<unsigned>(n));
  Integer s_pow;
  mpz_pow_ui(s_pow.get_mpz_t(), h.scale.get_mpz_t(), n);
  Rational out(total, den * s_pow);
  out.canonicalize();
  return out;
}

std::vector<Facet> facets(const Polytope& p) {
  const auto n = static_cast<std::size_t>(p.ambient_dim());
  const Hull h = hull_of(p);
  if (static_cast<std::size_t>(h.rank()) < n) {
    throw DegenerateInput("facets: body has affine dimension " + std::to_string(h.rank()) +
                          " < " + std::to_string(n));
  }
  std::vector<Facet> out;
  out.reserve(h.planes.size());
  for (const auto& pl : h.planes) {
    RPoint normal(n);
    for (std::size_t k = 0; k < n; ++k) normal[h.frame.pivots[k]] = Rational(pl.normal[k]);
    std::vector<std::size_t> on;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (detail::idot(pl.normal, h.coords[i]) == pl.offset) on.push_back(i);
    Rational offset(pl.offset, h.scale);
    offset.canonicalize();
    out.push_back(Facet{Hyperplane(std::move(normal), std::move(offset)), std::move(on)});
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> edges(const Polytope& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (p.size() < 2) return out;
  if (p.size() == 2) return {{0, 1}};
  const Hull h = hull_of(p);
  const auto r = static_cast<std::size_t>(h.rank());
  if (r == 1) return {{0, 1}};
  // incidence of every vertex with the facet planes
  std::vector<std::vector<std::size_t>> incident(p.size());
  for (std::size_t f = 0; f < h.planes.size(); ++f)
    for (std::size_t i = 0; i < p.size(); ++i)
      if (detail::idot(h.planes[f].normal, h.coords[i]) == h.planes[f].offset)
        incident[i].push_back(f);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      std::vector<std::size_t> common;
      std::set_intersection(incident[i].begin(), incident[i].end(), incident[j].begin(),
                            incident[j].end(), std::back_inserter(common));
      if (common.size() < r - 1) continue;
      std::vector<RPoint> normals;
      for (auto f : common) {
        RPoint v(r);
        for (std::size_t k = 0; k < r; ++k) v[k] = Rational(h.planes[f].normal[k]);
        normals.push_back(std::move(v));
      }
      if (rank(std::span<const RPoint>(normals)) == r - 1) out.emplace_back(i, j);
    }
  }
  return out;
}

SliceResult slice(const Polytope& p, const Hyperplane& h) {
  const auto n = static_cast<std::size_t>(p.ambient_dim());
  if (h.normal.dim() != n) throw DimensionMismatch("slice: hyperplane dimension differs from body");
  std::vector<int> side(p.size());
  bool pos = false, neg = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    side[i] = sgn(h.eval(p.vertices()[i]));
    pos |= side[i] > 0;
    neg |= side[i] < 0;
  }
  if (!pos || !neg) throw DegenerateInput("slice: hyperplane misses interior");

  std::vector<RPoint> up, down, mid;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& v = p.vertices()[i];
    if (side[i] >= 0) up.push_back(v);
    if (side[i] <= 0) down.push_back(v);
    if (side[i] == 0) mid.push_back(v);
  }
  for (const auto& [i, j] : edges(p)) {
    if (side[i] * side[j] >= 0) continue;
    const RPoint& a = p.vertices()[i];
    const RPoint& b = p.vertices()[j];
    const Rational ea = h.eval(a);
    const Rational t = ea / (ea - h.eval(b));
    RPoint x = a + (b - a) * t;
    up.push_back(x);
    down.push_back(x);
    mid.push_back(std::move(x));
  }
  const int d = p.ambient_dim();
  return SliceResult{canonicalize(up, d), canonicalize(down, d), canonicalize(mid, d)};
}

bool contains_point(const Polytope& p, const RPoint& x) {
  if (x.dim() != static_cast<std::size_t>(p.ambient_dim()))
    throw DimensionMismatch("contains: point dimension differs from body");
  if (p.size() == 1) return p.vertices()[0] == x;
  return hull_of(p).contains(x);
}

bool contains(const Polytope& p, const Polytope& q) {
  check_dim(p, q);
  if (p.size() == 1) return q.size() == 1 && q.vertices()[0] == p.vertices()[0];
  const Hull h = hull_of(p);
  return std::all_of(q.vertices().begin(), q.vertices().end(),
                     [&](const RPoint& v) { return h.contains(v); });
}

bool equal(const Polytope& p, const Polytope& q) { return p == q; }

double hausdorff_lower(const Polytope& p, const Polytope& q, std::span<const RPoint> dirs) {
  check_dim(p, q);
  if (dirs.empty()) throw InvalidArgument("hausdorff_lower: empty direction list");
  double best = 0.0;
  for (const auto& u : dirs) {
    double norm2 = 0.0;
    for (const auto& c : u.coords()) norm2 += c.get_d() * c.get_d();
    if (norm2 == 0.0) throw InvalidArgument("hausdorff_lower: zero direction");
    const Rational diff = support(p, u) - support(q, u);
    best = std::max(best, std::abs(diff.get_d()) / std::sqrt(norm2));
  }
  return best;
}

int approx_affine_dim(const Polytope& p, double tolerance) {
  const auto n = static_cast<std::size_t>(p.ambient_dim());
  std::vector<std::vector<double>> rows;
  const auto base = to_doubles(p.vertices()[0]);
  for (std::size_t i = 1; i < p.size(); ++i) {
    auto v = to_doubles(p.vertices()[i]);
    for (std::size_t c = 0; c < n; ++c) v[c] -= base[c];
    rows.push_back(std::move(v));
  }
  int r = 0;
  std::vector<char> used_col(n, 0), used_row(rows.size(), 0);
  for (std::size_t step = 0; step < n; ++step) {
    double best = 0.0;
    std::size_t br = 0, bc = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used_row[i]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (used_col[c]) continue;
        if (std::abs(rows[i][c]) > best) {
          best = std::abs(rows[i][c]);
          br = i;
          bc = c;
        }
      }
    }
    if (best <= tolerance) break;
    used_row[br] = used_col[bc] = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used_row[i]) continue;
      const double f = rows[i][bc] / rows[br][bc];
      for (std::size_t c = 0; c < n; ++c) rows[i][c] -= f * rows[br][c];
    }
    ++r;
  }
  return r;
}

RPoint vertex_centroid(const Polytope& p) {
  RPoint c(static_cast<std::size_t>(p.ambient_dim()));
  for (const auto& v : p.vertices()) c += v;
  c *= Rational(1, static_cast<long>(p.size()));
  return c;
}

}  // namespace minkval
