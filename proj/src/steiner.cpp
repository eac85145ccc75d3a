#include "minkval/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "minkval/errors.hpp"

namespace minkval {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::vector<std::vector<double>> vertex_doubles(const Polytope& k) {
  std::vector<std::vector<double>> out;
  out.reserve(k.size());
  for (const auto& v : k.vertices()) out.push_back(to_doubles(v));
  return out;
}

double support_d(const std::vector<std::vector<double>>& verts, const std::vector<double>& u) {
  double best = -HUGE_VAL;
  for (const auto& v : verts) {
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += v[i] * u[i];
    best = std::max(best, s);
  }
  return best;
}

std::vector<double> steiner_plane(const Polytope& k, std::size_t arcs) {
  const auto verts = vertex_doubles(k);
  std::vector<double> cuts;
  cuts.reserve(arcs + verts.size() * verts.size());
  for (std::size_t i = 0; i < arcs; ++i) cuts.push_back(kTwoPi * static_cast<double>(i) / static_cast<double>(arcs));
  // h(K, .) changes its maximizing vertex only where <v - w, u> = 0
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      const double dx = verts[i][0] - verts[j][0], dy = verts[i][1] - verts[j][1];
      double t = std::atan2(dy, dx) + std::numbers::pi / 2;
      for (int rep = 0; rep < 2; ++rep, t += std::numbers::pi) {
        double a = std::fmod(t, kTwoPi);
        if (a < 0) a += kTwoPi;
        cuts.push_back(a);
      }
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(cuts.front() + kTwoPi);

  std::vector<double> gx, gw;
  gauss_legendre(3, gx, gw);
  double sx = 0, sy = 0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double a = cuts[c], b = cuts[c + 1];
    if (b - a <= 0) continue;
    const double mid = (a + b) / 2, half = (b - a) / 2;
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double t = mid + half * gx[q];
      const std::vector<double> u{std::cos(t), std::sin(t)};
      const double h = support_d(verts, u);
      sx += half * gw[q] * h * u[0];
      sy += half * gw[q] * h * u[1];
    }
  }
  return {sx / std::numbers::pi, sy / std::numbers::pi};
}

}  // namespace

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

void gauss_legendre(std::size_t count, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  const std::size_t half = (count + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Newton iteration on P_count from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(count) + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (std::size_t k = 2; k <= count; ++k) {
        const double pk = ((2.0 * static_cast<double>(k) - 1) * x * p1 - (static_cast<double>(k) - 1) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (count == 1) {
        p1 = x;
        p0 = 1;
      }
      dp = static_cast<double>(count) * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[count - 1 - i] = x;
    const double w = 2 / ((1 - x * x) * dp * dp);
    weights[i] = weights[count - 1 - i] = w;
  }
}

std::vector<SphereNode> sphere_rule(int n, std::size_t nodes) {
  std::vector<SphereNode> out;
  std::vector<double> gx, gw;
  if (n == 1) {
    out.push_back({{1.0}, 1.0});
    out.push_back({{-1.0}, 1.0});
  } else if (n == 2) {
    const double w = kTwoPi / static_cast<double>(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
      const double t = w * static_cast<double>(k);
      out.push_back({{std::cos(t), std::sin(t)}, w});
    }
  } else if (n == 3) {
    const auto nz = std::max<std::size_t>(4, static_cast<std::size_t>(std::lround(std::sqrt(nodes / 2.0))));
    const std::size_t nphi = 2 * nz;
    gauss_legendre(nz, gx, gw);
    const double dphi = kTwoPi / static_cast<double>(nphi);
    for (std::size_t a = 0; a < nz; ++a) {
      const double r = std::sqrt(std::max(0.0, 1 - gx[a] * gx[a]));
      for (std::size_t b = 0; b < nphi; ++b) {
        const double phi = dphi * (static_cast<double>(b) + 0.5);
        out.push_back({{r * std::cos(phi), r * std::sin(phi), gx[a]}, gw[a] * dphi});
      }
    }
  } else if (n == 4) {
    const auto m = std::max<std::size_t>(4, static_cast<std::size_t>(std::lround(std::cbrt(static_cast<double>(nodes)))));
    gauss_legendre(m, gx, gw);
    const std::size_t nc = 2 * m;
    const double dc = kTwoPi / static_cast<double>(nc);
    // u = (sqrt(1-t) cos b, sqrt(1-t) sin b, sqrt(t) cos c, sqrt(t) sin c), dsigma = dt db dc / 2
    for (std::size_t a = 0; a < m; ++a) {
      const double t = (gx[a] + 1) / 2;
      const double wt = gw[a] / 2;
      const double r1 = std::sqrt(1 - t), r2 = std::sqrt(t);
      for (std::size_t i = 0; i < nc; ++i) {
        const double b = dc * (static_cast<double>(i) + 0.5);
        for (std::size_t j = 0; j < nc; ++j) {
          const double c = dc * (static_cast<double>(j) + 0.5);
          out.push_back({{r1 * std::cos(b), r1 * std::sin(b), r2 * std::cos(c), r2 * std::sin(c)},
                         wt * dc * dc / 2});
        }
      }
    }
  } else {
    throw InvalidArgument("sphere_rule: dimension must be 1..4");
  }
  return out;
}

std::vector<double> steiner_point(const Polytope& k, std::size_t nodes) {
  if (nodes < 32) throw InvalidArgument("steiner_point: at least 32 quadrature nodes required");
  const int n = k.ambient_dim();
  if (n == 2) return steiner_plane(k, nodes);
  const auto verts = vertex_doubles(k);
  std::vector<double> s(static_cast<std::size_t>(n), 0.0);
  for (const auto& node : sphere_rule(n, nodes)) {
    const double h = support_d(verts, node.u);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += node.weight * h * node.u[i];
  }
  const double kappa = unit_ball_volume(n);
  for (auto& c : s) c /= kappa;
  return s;
}

RPoint steiner_point_rational(const Polytope& k, std::size_t nodes) {
  const auto s = steiner_point(k, nodes);
  RPoint out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = round_to_dyadic(s[i], 40);
  return out;
}

}  // namespace minkval
