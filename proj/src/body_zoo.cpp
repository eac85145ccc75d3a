#include "minkval/body_zoo.hpp"

#include <string>

#include "minkval/errors.hpp"
#include "minkval/rng.hpp"

namespace minkval {
namespace {

constexpr long kDen = 16;

Rational small_rational(SplitMix64& g, long lo, long hi) {
  return make_rational(g.uniform_int(lo * kDen, hi * kDen), kDen);
}

RPoint random_point(SplitMix64& g, int n, long lo, long hi) {
  RPoint p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = small_rational(g, lo, hi);
  return p;
}

Rational positive_rational(SplitMix64& g, long max) {
  return make_rational(g.uniform_int(kDen / 2, max * kDen), kDen);
}

// Rows of a random upper-triangular matrix with positive diagonal.
std::vector<RPoint> triangular_frame(SplitMix64& g, int n) {
  std::vector<RPoint> rows;
  for (int i = 0; i < n; ++i) {
    RPoint r(static_cast<std::size_t>(n));
    r[static_cast<std::size_t>(i)] = positive_rational(g, 3);
    for (int j = i + 1; j < n; ++j) r[static_cast<std::size_t>(j)] = small_rational(g, -1, 1);
    rows.push_back(std::move(r));
  }
  return rows;
}

Polytope make_random_hull(SplitMix64& g, int n) {
  const RPoint base = random_point(g, n, -2, 2);
  std::vector<RPoint> pts{base};
  for (const auto& r : triangular_frame(g, n)) pts.push_back(base + r);
  const auto extra = g.uniform_int(1, n + 2);
  for (std::int64_t i = 0; i < extra; ++i) pts.push_back(random_point(g, n, -3, 3));
  return canonicalize(pts, n);
}

Polytope make_zonotope(SplitMix64& g, int n) {
  std::vector<SegmentSpec> gens;
  for (auto& r : triangular_frame(g, n)) gens.emplace_back(r * make_rational(1, 2));
  const auto extra = g.uniform_int(0, n == 2 ? 2 : 1);
  for (std::int64_t i = 0; i < extra; ++i) {
    RPoint v;
    do {
      v = random_point(g, n, -1, 1);
    } while (v.is_zero());
    gens.emplace_back(std::move(v));
  }
  return translate(zonotope(gens), random_point(g, n, -2, 2));
}

Polytope make_simplex_like(SplitMix64& g, int n) {
  const RPoint base = random_point(g, n, -2, 2);
  std::vector<RPoint> pts{base};
  for (const auto& r : triangular_frame(g, n)) {
    // shear the frame so the simplex is not axis-aligned
    RPoint s = r;
    for (int j = 0; j < n; ++j) s[static_cast<std::size_t>(j)] += small_rational(g, 0, 1) / 4;
    pts.push_back(base + s);
  }
  Polytope p = canonicalize(pts, n);
  if (affine_dim(p) < n) {
    pts.resize(1);
    for (const auto& r : triangular_frame(g, n)) pts.push_back(base + r);
    p = canonicalize(pts, n);
  }
  return p;
}

Polytope make_symmetric(SplitMix64& g, int n) {
  std::vector<RPoint> pts;
  for (int i = 0; i < n; ++i) {
    RPoint e = RPoint::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)) *
               positive_rational(g, 2);
    pts.push_back(-e);
    pts.push_back(std::move(e));
  }
  const auto extra = g.uniform_int(1, n);
  for (std::int64_t i = 0; i < extra; ++i) {
    RPoint v = random_point(g, n, -2, 2);
    pts.push_back(-v);
    pts.push_back(std::move(v));
  }
  return canonicalize(pts, n);
}

}  // namespace

void CorpusSpec::validate() const {
  if (dim < 1 || dim > max_ambient_dim())
    throw InvalidArgument("corpus dimension " + std::to_string(dim) + " out of range");
  if (count < 1) throw InvalidArgument("corpus count must be >= 1");
  const double w[] = {mix.random_hull, mix.zonotope, mix.simplex_like, mix.symmetric};
  double total = 0;
  for (double x : w) {
    if (!(x >= 0)) throw InvalidArgument("corpus weights must be nonnegative");
    total += x;
  }
  if (total <= 0) throw InvalidArgument("corpus weights must not all be zero");
}

Polytope segment(const RPoint& v) {
  if (v.is_zero()) throw InvalidArgument("segment: zero vector");
  return canonicalize(std::vector<RPoint>{-v, v}, static_cast<int>(v.dim()));
}

Polytope simplex(int n) {
  std::vector<RPoint> pts{RPoint(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i)
    pts.push_back(RPoint::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
  return canonicalize(pts, n);
}

Polytope unit_cube(int n) {
  std::vector<RPoint> pts;
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    RPoint p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      if (mask & (1U << i)) p[static_cast<std::size_t>(i)] = 1;
    pts.push_back(std::move(p));
  }
  return canonicalize(pts, n);
}

Polytope cross_polytope(int n) {
  std::vector<RPoint> pts;
  for (int i = 0; i < n; ++i) {
    RPoint e = RPoint::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i));
    pts.push_back(-e);
    pts.push_back(std::move(e));
  }
  return canonicalize(pts, n);
}

Polytope zonotope(std::span<const SegmentSpec> gens) {
  if (gens.empty()) throw InvalidArgument("zonotope: at least one generator required");
  Polytope acc = segment(gens[0].v());
  for (std::size_t i = 1; i < gens.size(); ++i) acc = minkowski_sum(acc, segment(gens[i].v()));
  return acc;
}

Polytope cube_from_segments(std::span<const SegmentSpec> gens) {
  if (gens.empty()) throw InvalidArgument("cube_from_segments: no generators");
  const auto n = gens[0].v().dim();
  if (gens.size() != n)
    throw InvalidArgument("cube_from_segments: need exactly n = " + std::to_string(n) + " generators");
  std::vector<RPoint> vs;
  for (const auto& s : gens) vs.push_back(s.v());
  if (rank(std::span<const RPoint>(vs)) != n)
    throw InvalidArgument("cube_from_segments: generators are linearly dependent");
  return zonotope(gens);
}

BodyKind pick_kind(const CorpusSpec& spec, std::size_t index) {
  SplitMix64 g(derive_seed(spec.seed ^ 0x6b696e64ULL, index));
  const double w[] = {spec.mix.random_hull, spec.mix.zonotope, spec.mix.simplex_like,
                      spec.mix.symmetric};
  const double total = w[0] + w[1] + w[2] + w[3];
  double x = g.uniform01() * total;
  for (int k = 0; k < 4; ++k) {
    if (w[k] > 0 && x < w[k]) return static_cast<BodyKind>(k);
    x -= w[k];
  }
  for (int k = 3; k >= 0; --k)
    if (w[k] > 0) return static_cast<BodyKind>(k);
  return BodyKind::RandomHull;
}

Polytope random_polytope(const CorpusSpec& spec, std::size_t index) {
  spec.validate();
  SplitMix64 g(derive_seed(spec.seed, index));
  switch (pick_kind(spec, index)) {
    case BodyKind::RandomHull: return make_random_hull(g, spec.dim);
    case BodyKind::Zonotope: return make_zonotope(g, spec.dim);
    case BodyKind::SimplexLike: return make_simplex_like(g, spec.dim);
    case BodyKind::Symmetric: return make_symmetric(g, spec.dim);
  }
  throw Error("random_polytope: unreachable");
}

std::vector<Polytope> make_corpus(const CorpusSpec& spec) {
  spec.validate();
  std::vector<Polytope> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) out.push_back(random_polytope(spec, static_cast<std::size_t>(i)));
  return out;
}

Polytope random_flat_polytope(int n, int d, std::uint64_t seed) {
  if (d < 0 || d > n) throw InvalidArgument("random_flat_polytope: need 0 <= d <= n");
  SplitMix64 g(seed);
  const RPoint base = random_point(g, n, -2, 2);
  if (d == 0) return point_body(base);
  // d independent directions from a random triangular frame
  std::vector<RPoint> frame = triangular_frame(g, n);
  frame.resize(static_cast<std::size_t>(d));
  std::vector<RPoint> pts{base};
  for (const auto& r : frame) pts.push_back(base + r);
  const auto extra = g.uniform_int(0, 3);
  for (std::int64_t i = 0; i < extra; ++i) {
    RPoint q = base;
    for (const auto& r : frame) q += r * small_rational(g, -1, 1);
    pts.push_back(std::move(q));
  }
  return canonicalize(pts, n);
}

std::vector<SegmentSpec> random_generators(int n, int count, std::uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<SegmentSpec> out;
  while (static_cast<int>(out.size()) < count) {
    RPoint v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = g.uniform_int(-3, 3);
    if (!v.is_zero()) out.emplace_back(std::move(v));
  }
  return out;
}

SlicePair random_slice_pair(const Polytope& p, std::uint64_t seed) {
  const int n = p.ambient_dim();
  if (affine_dim(p) != n) throw DegenerateInput("random_slice_pair: body is not full-dimensional");
  SplitMix64 g(seed);
  constexpr int kAttempts = 32;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    // strictly positive barycentric weights give an interior point
    RPoint c(static_cast<std::size_t>(n));
    long total = 0;
    for (const auto& v : p.vertices()) {
      const auto w = g.uniform_int(1, 8);
      c += v * Rational(w);
      total += w;
    }
    c *= make_rational(1, total);
    RPoint normal(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) normal[static_cast<std::size_t>(i)] = g.uniform_int(-4, 4);
    if (normal.is_zero()) continue;
    Hyperplane h(normal, dot(normal, c));
    try {
      auto s = slice(p, h);
      return SlicePair{std::move(h), std::move(s.upper), std::move(s.lower), std::move(s.middle)};
    } catch (const DegenerateInput&) {
      continue;
    }
  }
  throw DegenerateInput("random_slice_pair: exhausted retries");
}

}  // namespace minkval
