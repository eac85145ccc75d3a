#include "hull.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "minkval/errors.hpp"
#include "minkval/linalg.hpp"

namespace minkval::detail {
namespace {

// Reduces d against the echelon rows in insertion order.
void reduce(RPoint& d, const std::vector<RPoint>& basis, const std::vector<std::size_t>& pivots) {
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Rational& c = d[pivots[k]];
    if (sgn(c) == 0) continue;
    const Rational f = c / basis[k][pivots[k]];
    for (std::size_t i = 0; i < d.dim(); ++i) {
      if (sgn(basis[k][i]) != 0) d[i] -= f * basis[k][i];
    }
  }
}

using I128 = __int128;

void divexact(Integer& a, const Integer& b) { mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()); }
void divexact(I128& a, const I128& b) { a /= b; }

I128 abs128(I128 a) { return a < 0 ? -a : a; }
Integer gcd_of(const Integer& a, const Integer& b) { return gcd(a, b); }
I128 gcd_of(I128 a, I128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Integer to_integer(const Integer& a) { return a; }
Integer to_integer(I128 a) {
  const bool neg = a < 0;
  const auto u = static_cast<unsigned __int128>(neg ? -a : a);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_mul_2exp(hi.get_mpz_t(), hi.get_mpz_t(), 64);
  hi += Integer(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  return neg ? Integer(-hi) : hi;
}

template <class T>
using TVec = std::vector<T>;

template <class T>
T tdot(const TVec<T>& a, const TVec<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Bareiss determinant.
template <class T>
T tdet(std::vector<TVec<T>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  T prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        divexact(m[i][j], prev);
      }
    }
    prev = m[k][k];
  }
  T out = m[n - 1][n - 1];
  if (sign < 0) out = -out;
  return out;
}

// Normal of the hyperplane through r points in Z^r (generalized cross product).
template <class T>
TVec<T> normal_through(const std::vector<const TVec<T>*>& pts) {
  const std::size_t r = pts.size();
  std::vector<TVec<T>> diffs(r - 1, TVec<T>(r));
  for (std::size_t k = 1; k < r; ++k)
    for (std::size_t i = 0; i < r; ++i) diffs[k - 1][i] = (*pts[k])[i] - (*pts[0])[i];
  TVec<T> normal(r);
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<TVec<T>> minor(r - 1, TVec<T>(r - 1));
    for (std::size_t row = 0; row + 1 < r; ++row) {
      std::size_t c = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (i == j) continue;
        minor[row][c++] = diffs[row][i];
      }
    }
    normal[j] = tdet(std::move(minor));
    if (j % 2 == 1) normal[j] = -normal[j];
  }
  return normal;
}

template <class T>
struct TFacet {
  std::vector<std::size_t> vertices;
  TVec<T> normal;
  T offset;
};

// Facet through the given vertices, oriented so that interior / den lies
// strictly inside.
template <class T>
TFacet<T> make_facet(std::vector<std::size_t> verts, const std::vector<TVec<T>>& coords, const TVec<T>& interior,
                     const T& den) {
  std::vector<const TVec<T>*> pts;
  pts.reserve(verts.size());
  for (auto v : verts) pts.push_back(&coords[v]);
  TVec<T> normal = normal_through(pts);
  T offset = tdot(normal, coords[verts[0]]);
  const T side = tdot(normal, interior) - offset * den;
  if (side == 0) throw Error("hull: interior point on a facet plane (internal error)");
  if (side > 0) {
    for (auto& a : normal) a = -a;
    offset = -offset;
  }
  std::sort(verts.begin(), verts.end());
  return TFacet<T>{std::move(verts), std::move(normal), std::move(offset)};
}

// Simplicial boundary of conv(coords) by incremental insertion with outside
// sets: every point still outside the current hull is attached to one facet
// it sees, points seeing no facet are inside and dropped, and the farthest
// point of a facet is inserted next.
template <class T>
std::vector<TFacet<T>> quickhull(const std::vector<TVec<T>>& coords, const std::vector<std::size_t>& simplex) {
  const std::size_t r = simplex.size() - 1;
  TVec<T> interior(r);
  for (auto v : simplex)
    for (std::size_t i = 0; i < r; ++i) interior[i] += coords[v][i];
  const T den = static_cast<long>(r + 1);

  std::vector<TFacet<T>> facets;
  for (std::size_t skip = 0; skip <= r; ++skip) {
    std::vector<std::size_t> verts;
    for (std::size_t k = 0; k <= r; ++k)
      if (k != skip) verts.push_back(simplex[k]);
    facets.push_back(make_facet(std::move(verts), coords, interior, den));
  }
  std::vector<char> in_simplex(coords.size(), 0);
  for (auto v : simplex) in_simplex[v] = 1;

  std::vector<std::vector<std::size_t>> outside(facets.size());
  std::vector<char> alive(facets.size(), 1);
  auto height = [&](std::size_t f, std::size_t q) -> T { return tdot(facets[f].normal, coords[q]) - facets[f].offset; };
  auto assign = [&](std::size_t q, std::size_t first, std::size_t last) {
    for (std::size_t f = first; f < last; ++f)
      if (alive[f] && height(f, q) > 0) {
        outside[f].push_back(q);
        return;
      }
  };
  for (std::size_t q = 0; q < coords.size(); ++q)
    if (!in_simplex[q]) assign(q, 0, facets.size());

  std::map<std::vector<std::size_t>, int> ridge_count;
  for (std::size_t cur = 0; cur < facets.size(); ++cur) {
    if (!alive[cur] || outside[cur].empty()) continue;
    std::size_t p = outside[cur][0];
    T best = height(cur, p);
    for (auto q : outside[cur]) {
      T hq = height(cur, q);
      if (hq > best) {
        best = std::move(hq);
        p = q;
      }
    }
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (alive[f] && height(f, p) > 0) visible.push_back(f);

    ridge_count.clear();
    std::vector<std::size_t> orphans;
    for (auto f : visible) {
      const auto& verts = facets[f].vertices;
      for (std::size_t skip = 0; skip < verts.size(); ++skip) {
        std::vector<std::size_t> ridge;
        ridge.reserve(verts.size() - 1);
        for (std::size_t k = 0; k < verts.size(); ++k)
          if (k != skip) ridge.push_back(verts[k]);
        ++ridge_count[std::move(ridge)];
      }
      alive[f] = 0;
      for (auto q : outside[f])
        if (q != p) orphans.push_back(q);
      std::vector<std::size_t>().swap(outside[f]);
    }
    const std::size_t first_new = facets.size();
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      std::vector<std::size_t> verts = ridge;
      verts.push_back(p);
      facets.push_back(make_facet(std::move(verts), coords, interior, den));
      outside.emplace_back();
      alive.push_back(1);
    }
    for (auto q : orphans) assign(q, first_new, facets.size());
  }

  std::vector<TFacet<T>> kept;
  for (std::size_t f = 0; f < facets.size(); ++f)
    if (alive[f]) kept.push_back(std::move(facets[f]));
  return kept;
}

template <class T>
struct PlaneT {
  TVec<T> normal;
  T offset;
  friend bool operator<(const PlaneT& a, const PlaneT& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
  friend bool operator==(const PlaneT&, const PlaneT&) = default;
};

template <class T>
PlaneT<T> primitive(const TFacet<T>& f) {
  T g = 0;
  for (const auto& a : f.normal) g = gcd_of(g, a);
  if (g == 0) throw Error("hull: zero facet normal (internal error)");
  PlaneT<T> out{f.normal, f.offset};
  for (auto& a : out.normal) a /= g;
  out.offset /= g;
  return out;
}

std::size_t int_rank(const std::vector<const IVec*>& rows, std::size_t width) {
  std::vector<RPoint> q;
  q.reserve(rows.size());
  for (const auto* r : rows) {
    RPoint p(width);
    for (std::size_t i = 0; i < width; ++i) p[i] = Rational((*r)[i]);
    q.push_back(std::move(p));
  }
  return rank(std::span<const RPoint>(q));
}

IVec to_ivec(const TVec<Integer>& v) { return v; }
IVec to_ivec(const TVec<I128>& v) {
  IVec out;
  out.reserve(v.size());
  for (auto x : v) out.push_back(to_integer(x));
  return out;
}

template <class T>
void finish(Hull& h, std::vector<TFacet<T>> facets, const std::vector<TVec<T>>& coords) {
  const std::size_t r = coords.empty() ? 0 : coords[0].size();
  std::vector<PlaneT<T>> planes;
  std::vector<char> candidate(coords.size(), 0);
  h.triangulation.reserve(facets.size());
  for (auto& f : facets) {
    planes.push_back(primitive(f));
    for (auto v : f.vertices) candidate[v] = 1;
    h.triangulation.push_back(SimplexFacet{f.vertices, Plane{to_ivec(f.normal), to_integer(f.offset)}});
  }
  std::sort(planes.begin(), planes.end());
  planes.erase(std::unique(planes.begin(), planes.end()), planes.end());
  h.planes.reserve(planes.size());
  for (const auto& pl : planes) h.planes.push_back(Plane{to_ivec(pl.normal), to_integer(pl.offset)});
  std::sort(h.planes.begin(), h.planes.end());

  // A boundary point is extreme iff the normals of the facets through it span Q^r.
  for (std::size_t v = 0; v < coords.size(); ++v) {
    if (!candidate[v]) continue;
    std::vector<const IVec*> normals;
    for (std::size_t k = 0; k < planes.size(); ++k)
      if (tdot(planes[k].normal, coords[v]) == planes[k].offset) normals.push_back(&h.planes[k].normal);
    if (normals.size() >= r && int_rank(normals, r) == r) h.extreme.push_back(v);
  }
}

}  // namespace

Integer idot(const IVec& a, const IVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool AffineFrame::contains(const RPoint& x) const {
  if (x.dim() != base.dim()) throw DimensionMismatch("point dimension differs from body");
  RPoint d = x - base;
  reduce(d, basis, pivots);
  return d.is_zero();
}

std::vector<Rational> AffineFrame::project(const RPoint& x) const {
  std::vector<Rational> out;
  out.reserve(pivots.size());
  for (auto p : pivots) out.push_back(x[p]);
  return out;
}

AffineFrame affine_frame(std::span<const RPoint> points) {
  if (points.empty()) throw InvalidArgument("affine frame of an empty point set");
  AffineFrame f;
  f.base = points[0];
  const std::size_t n = f.base.dim();
  for (std::size_t i = 1; i < points.size() && f.basis.size() < n; ++i) {
    RPoint d = points[i] - f.base;
    reduce(d, f.basis, f.pivots);
    if (d.is_zero()) continue;
    std::size_t piv = 0;
    while (sgn(d[piv]) == 0) ++piv;
    f.pivots.push_back(piv);
    f.basis.push_back(std::move(d));
    f.spanning.push_back(i);
  }
  f.rank = static_cast<int>(f.basis.size());
  return f;
}

std::vector<Rational> Hull::scaled_projection(const RPoint& x) const {
  auto y = frame.project(x);
  for (auto& c : y) c *= scale;
  return y;
}

bool Hull::contains(const RPoint& x) const {
  if (!frame.contains(x)) return false;
  if (rank() == 0) return true;
  const auto y = scaled_projection(x);
  for (const auto& pl : planes) {
    Rational s = 0;
    for (std::size_t i = 0; i < y.size(); ++i) s += Rational(pl.normal[i]) * y[i];
    if (s > Rational(pl.offset)) return false;
  }
  return true;
}

Hull build_hull(std::span<const RPoint> points) {
  Hull h;
  h.frame = affine_frame(points);
  const auto r = static_cast<std::size_t>(h.frame.rank);
  if (r == 0) {
    h.extreme = {0};
    return h;
  }

  // Common denominator of the projected coordinates.
  h.scale = 1;
  for (const auto& p : points)
    for (auto piv : h.frame.pivots) h.scale = lcm(h.scale, p[piv].get_den());
  h.coords.reserve(points.size());
  for (const auto& p : points) {
    IVec c(r);
    for (std::size_t k = 0; k < r; ++k) {
      const Rational& x = p[h.frame.pivots[k]];
      c[k] = x.get_num() * (h.scale / x.get_den());
    }
    h.coords.push_back(std::move(c));
  }

  if (r == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (h.coords[i][0] < h.coords[lo][0]) lo = i;
      if (h.coords[i][0] > h.coords[hi][0]) hi = i;
    }
    h.planes.push_back(Plane{IVec{1}, h.coords[hi][0]});
    h.planes.push_back(Plane{IVec{-1}, -h.coords[lo][0]});
    std::sort(h.planes.begin(), h.planes.end());
    h.extreme = {std::min(lo, hi), std::max(lo, hi)};
    return h;
  }

  std::vector<std::size_t> simplex{0};
  simplex.insert(simplex.end(), h.frame.spanning.begin(), h.frame.spanning.end());

  bool small = r <= 4;
  for (const auto& c : h.coords)
    for (const auto& x : c)
      if (mpz_sizeinbase(x.get_mpz_t(), 2) > 24) small = false;
  if (small) {
    std::vector<TVec<I128>> coords;
    coords.reserve(h.coords.size());
    for (const auto& c : h.coords) {
      TVec<I128> v(r);
      for (std::size_t i = 0; i < r; ++i) v[i] = c[i].get_si();
      coords.push_back(std::move(v));
    }
    finish(h, quickhull(coords, simplex), coords);
  } else {
    finish(h, quickhull(h.coords, simplex), h.coords);
  }
  return h;
}

}  // namespace minkval::detail
