#include "minkval/mcmullen.hpp"

#include <bit>
#include <string>

#include "compare.hpp"
#include "minkval/errors.hpp"

namespace minkval {
namespace {

using detail::at_most;
using detail::same_body;
using detail::same_value;

// Phi(lambda K) for lambda = 1..count.
std::vector<Polytope> scaled_images(const OperatorSpec& op, const Polytope& k, std::size_t count,
                                    const EvalMode& mode) {
  std::vector<Polytope> out;
  out.reserve(count);
  for (std::size_t l = 1; l <= count; ++l) out.push_back(apply(op, scale(k, static_cast<long>(l)), mode));
  return out;
}

std::vector<Rational> node_range(std::size_t count) {
  std::vector<Rational> nodes;
  for (std::size_t l = 1; l <= count; ++l) nodes.emplace_back(static_cast<long>(l));
  return nodes;
}

McMullenRecord fit(const OperatorSpec& op, const Polytope& k, const RPoint& u, std::span<const Polytope> images,
                   const EvalMode& mode) {
  const std::size_t m = images.size() - 1;
  std::vector<Rational> values;
  for (std::size_t i = 0; i < m; ++i) values.push_back(support(images[i], u));
  const auto nodes = node_range(m);
  McMullenRecord r{op, k, u, interpolate(nodes, values), false, 0, !mode.is_exact(), mode.tolerance};
  const Rational held(static_cast<long>(m + 1));
  const Rational actual = support(images[m], u);
  const Rational predicted = evaluate_polynomial(r.components, held);
  r.residual = actual - predicted;
  r.validated = same_value(actual, predicted, mode);
  if (!r.validated)
    throw DegreeExceeded("degree exceeded: held-out residual " + to_string(r.residual) + " at lambda = " +
                         to_string(held));
  return r;
}

// Components f_0..f_n at each direction.
std::vector<std::vector<Rational>> components(const OperatorSpec& op, const Polytope& k,
                                              std::span<const RPoint> dirs, const EvalMode& mode) {
  std::vector<std::vector<Rational>> out;
  for (auto& r : decompose(op, k, dirs, mode)) out.push_back(std::move(r.components));
  return out;
}

RPoint small_shift(int n) {
  RPoint t(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < t.dim(); ++i) t[i] = make_rational(static_cast<long>(2 * i + 1), 2 + static_cast<long>(i));
  return t;
}

}  // namespace

McMullenRecord decompose_scalar(const OperatorSpec& op, const Polytope& k, const Direction& u,
                                const EvalMode& mode) {
  const std::vector<RPoint> dirs{u.vector()};
  return decompose(op, k, dirs, mode).front();
}

std::vector<McMullenRecord> decompose(const OperatorSpec& op, const Polytope& k, std::span<const RPoint> dirs,
                                      const EvalMode& mode) {
  const auto n = static_cast<std::size_t>(k.ambient_dim());
  for (const auto& u : dirs) {
    if (u.dim() != n) throw DimensionMismatch("direction and body dimensions differ");
    if (u.is_zero()) throw InvalidArgument("direction must be nonzero");
  }
  const auto images = scaled_images(op, k, n + 2, mode);
  std::vector<McMullenRecord> out;
  out.reserve(dirs.size());
  for (const auto& u : dirs) out.push_back(fit(op, k, u, images, mode));
  return out;
}

CheckResult f0_constancy(const OperatorSpec& op, std::span<const Polytope> bodies, std::span<const RPoint> dirs,
                         const EvalMode& mode) {
  const std::string name = "f0_constancy";
  if (bodies.size() < 2) throw InvalidArgument("f0_constancy needs at least two bodies");
  const int n = bodies[0].ambient_dim();
  const RPoint t = small_shift(n);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (!same_body(apply(op, translate(bodies[i], t), mode), apply(op, bodies[i], mode), mode)) {
      Witness w;
      w.body = bodies[i];
      w.vector = t;
      w.trial = i;
      return CheckResult::fail(name, "operator is not translation invariant", std::move(w));
    }
  }
  const Polytope point_image = apply(op, Polytope(n), mode);
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const auto f = components(op, bodies[i], dirs, mode);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const Rational expected = support(point_image, dirs[d]);
      if (!same_value(f[d][0], expected, mode)) {
        Witness w;
        w.body = bodies[i];
        w.vector = dirs[d];
        w.value = f[d][0];
        w.expected = expected;
        w.trial = i;
        return CheckResult::fail(name, "f_0 differs from h(Phi({0}), u)", std::move(w));
      }
    }
  }
  return CheckResult::pass(name);
}

FnReport fn_volume_proportionality(const OperatorSpec& op, std::span<const Polytope> bodies,
                                   std::span<const RPoint> dirs, const EvalMode& mode) {
  const std::string name = "fn_volume_proportionality";
  FnReport rep{CheckResult::pass(name), {}};
  const auto n = static_cast<std::size_t>(bodies.empty() ? 0 : bodies[0].ambient_dim());
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const Rational v = volume(bodies[i]);
    if (sgn(v) == 0) throw DegenerateInput("fn_volume_proportionality: zero-volume body");
    const auto f = components(op, bodies[i], dirs, mode);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      const Rational ratio = f[d][n] / v;
      if (i == 0) {
        rep.ratios.push_back(ratio);
      } else if (!same_value(ratio, rep.ratios[d], mode)) {
        Witness w;
        w.body = bodies[i];
        w.vector = dirs[d];
        w.value = ratio;
        w.expected = rep.ratios[d];
        w.trial = i;
        rep.check = CheckResult::fail(name, "f_n / V_n depends on the body", std::move(w));
        return rep;
      }
    }
  }
  return rep;
}

CheckResult component_facts_check(const OperatorSpec& op, int j, std::span<const Polytope> corpus,
                              std::span<const RPoint> dirs, const EvalMode& mode) {
  const std::string name = "component_facts";
  if (corpus.empty()) return CheckResult::skipped(name, "empty corpus");
  const int n = corpus[0].ambient_dim();
  if (j < 0 || j > n) throw InvalidArgument("component index out of range");
  const auto ju = static_cast<std::size_t>(j);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const int d = affine_dim(corpus[i]);
    if (d > j) continue;
    std::vector<RPoint> all(dirs.begin(), dirs.end());
    if (d == j) {
      for (const auto& u : dirs) all.push_back(u * Rational(2));
      for (std::size_t a = 0; a < dirs.size(); ++a)
        for (std::size_t b = a + 1; b < dirs.size(); ++b)
          if (!(dirs[a] + dirs[b]).is_zero()) all.push_back(dirs[a] + dirs[b]);
    }
    const auto f = components(op, corpus[i], all, mode);
    auto fail = [&](std::string detail, const RPoint& u, Rational value, Rational expected) {
      Witness w;
      w.body = corpus[i];
      w.vector = u;
      w.value = std::move(value);
      w.expected = std::move(expected);
      w.trial = i;
      return CheckResult::fail(name, std::move(detail), std::move(w));
    };
    if (d < j) {
      for (std::size_t a = 0; a < dirs.size(); ++a)
        if (!same_value(f[a][ju], 0, mode)) return fail("f_j nonzero on a body of dimension < j", dirs[a], f[a][ju], 0);
      continue;
    }
    const std::size_t m = dirs.size();
    for (std::size_t a = 0; a < m; ++a)
      if (!same_value(f[m + a][ju], 2 * f[a][ju], mode))
        return fail("f_j not 1-homogeneous in u", dirs[a], f[m + a][ju], 2 * f[a][ju]);
    std::size_t idx = 2 * m;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        if ((dirs[a] + dirs[b]).is_zero()) continue;
        const Rational bound = f[a][ju] + f[b][ju];
        if (!at_most(f[idx][ju], bound, mode)) return fail("f_j not subadditive in u", all[idx], f[idx][ju], bound);
        ++idx;
      }
  }
  return CheckResult::pass(name);
}

CheckResult zonoid_support_probe(const OperatorSpec& op, const Polytope& z,
                                 std::span<const std::pair<RPoint, RPoint>> dir_pairs, const EvalMode& mode) {
  const std::string name = "zonoid_support_probe";
  std::vector<RPoint> all;
  for (const auto& [u, v] : dir_pairs) {
    if ((u + v).is_zero()) continue;
    all.push_back(u);
    all.push_back(v);
    all.push_back(u + v);
  }
  const auto f = components(op, z, all, mode);
  for (std::size_t p = 0; p < all.size(); p += 3)
    for (std::size_t j = 0; j < f[p].size(); ++j) {
      const Rational bound = f[p][j] + f[p + 1][j];
      if (!at_most(f[p + 2][j], bound, mode)) {
        Witness w;
        w.body = z;
        w.vector = all[p + 2];
        w.value = f[p + 2][j];
        w.expected = bound;
        w.trial = j;
        return CheckResult::fail(name, "f_" + std::to_string(j) + " not subadditive", std::move(w));
      }
    }
  return CheckResult::pass(name);
}

CheckResult polarization_check(const OperatorSpec& op, std::span<const Polytope> segments, int k,
                               std::span<const RPoint> dirs, const EvalMode& mode) {
  const std::string name = "polarization";
  if (segments.empty()) throw InvalidArgument("polarization needs segments");
  const int n = segments[0].ambient_dim();
  if (static_cast<int>(segments.size()) != n) throw DimensionMismatch("polarization needs exactly n segments");
  if (k < 1 || k > n) throw InvalidArgument("polarization degree out of range");
  for (const auto& s : segments)
    if (affine_dim(s) != 1) throw InvalidArgument("polarization inputs must be segments");
  const auto ku = static_cast<std::size_t>(k);
  const auto lhs = components(op, minkowski_sum(segments), dirs, mode);
  std::vector<Rational> rhs(dirs.size());
  for (unsigned mask = 1; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<Polytope> sub;
    for (int i = 0; i < n; ++i)
      if (mask & (1U << i)) sub.push_back(segments[static_cast<std::size_t>(i)]);
    const auto f = components(op, minkowski_sum(sub), dirs, mode);
    for (std::size_t d = 0; d < dirs.size(); ++d) rhs[d] += f[d][ku];
  }
  for (std::size_t d = 0; d < dirs.size(); ++d)
    if (!same_value(lhs[d][ku], rhs[d], mode)) {
      Witness w;
      w.body = minkowski_sum(segments);
      w.vector = dirs[d];
      w.value = lhs[d][ku];
      w.expected = rhs[d];
      return CheckResult::fail(name, "f_k of the sum differs from the subset sum", std::move(w));
    }
  return CheckResult::pass(name);
}

VolumePolyRecord volume_poly(const OperatorSpec& op, const Polytope& k, const EvalMode& mode) {
  const auto n = static_cast<std::size_t>(k.ambient_dim());
  auto attempt = [&](std::size_t degree, VolumePolyRecord& rec) {
    const auto nodes = node_range(degree + 1);
    std::vector<Rational> values;
    for (const auto& l : nodes) values.push_back(volume(apply(op, scale(k, l), mode)));
    rec.coeffs = interpolate(nodes, values);
    const Rational held(static_cast<long>(degree + 2));
    const Rational actual = volume(apply(op, scale(k, held), mode));
    const Rational predicted = evaluate_polynomial(rec.coeffs, held);
    rec.residual = actual - predicted;
    rec.validated = same_value(actual, predicted, mode);
    return rec.validated;
  };
  VolumePolyRecord rec{op, k, {}, false, false, 0};
  if (attempt(n * n, rec)) return rec;
  std::size_t nn = 1;
  for (std::size_t i = 0; i < n; ++i) nn *= n;
  if (n <= 3 && nn > n * n) {
    rec.degree_raised = true;
    if (attempt(nn, rec)) return rec;
  }
  throw DegreeExceeded("degree exceeded: volume polynomial residual " + to_string(rec.residual));
}

CheckResult monomial_check(const OperatorSpec& op, std::span<const Polytope> corpus, const EvalMode& mode) {
  const std::string name = "monomial";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto rec = volume_poly(op, corpus[i], mode);
    const auto n = static_cast<std::size_t>(corpus[i].ambient_dim());
    const bool full = affine_dim(corpus[i]) == static_cast<int>(n);
    for (std::size_t j = 0; j < rec.coeffs.size(); ++j) {
      const bool should_vanish = !full || j != n;
      const bool vanishes = same_value(rec.coeffs[j], 0, mode);
      if (should_vanish != vanishes) {
        Witness w;
        w.body = corpus[i];
        w.value = rec.coeffs[j];
        w.trial = i;
        return CheckResult::fail(name,
                                 (should_vanish ? "nonzero v_" : "vanishing v_") + std::to_string(j),
                                 std::move(w));
      }
    }
  }
  return CheckResult::pass(name);
}

int dichotomy_data(const OperatorSpec& op, int n, const EvalMode& mode) {
  const auto dim = static_cast<std::size_t>(n);
  RPoint p1(dim), p2(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    p1[i] = static_cast<long>(i) + 1;
    p2[i] = make_rational(-3, static_cast<long>(i) + 2);
  }
  std::vector<int> dims;
  for (const auto& p : {RPoint(dim), p1, p2}) {
    const Polytope img = apply(op, point_body(p), mode);
    dims.push_back(mode.is_exact() ? affine_dim(img) : approx_affine_dim(img, mode.tolerance));
  }
  if (dims[0] != dims[1] || dims[0] != dims[2])
    throw ModelViolation("inconsistent point-image dimensions " + std::to_string(dims[0]) + ", " +
                         std::to_string(dims[1]) + ", " + std::to_string(dims[2]));
  return dims[0];
}

CheckResult even_check(const OperatorSpec& op, std::span<const Polytope> corpus, std::span<const RPoint> dirs,
                       const EvalMode& mode) {
  const std::string name = "even";
  for (const auto& k : corpus) {
    const Polytope img = apply(op, k, mode);
    if (!same_body(reflect(img), img, mode)) throw PreconditionViolation("operator is not an o-symmetrization");
  }
  std::vector<RPoint> all(dirs.begin(), dirs.end());
  for (const auto& u : dirs) all.push_back(-u);
  const std::size_t m = dirs.size();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto f = components(op, corpus[i], all, mode);
    for (std::size_t d = 0; d < m; ++d)
      for (std::size_t j = 0; j < f[d].size(); ++j)
        if (!same_value(f[d][j], f[m + d][j], mode)) {
          Witness w;
          w.body = corpus[i];
          w.vector = dirs[d];
          w.value = f[d][j];
          w.expected = f[m + d][j];
          w.trial = i;
          return CheckResult::fail(name, "f_" + std::to_string(j) + " is not even", std::move(w));
        }
  }
  return CheckResult::pass(name);
}

}  // namespace minkval
