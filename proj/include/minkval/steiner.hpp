#pragma once

#include <cstddef>
#include <vector>

#include "minkval/polytope.hpp"

namespace minkval {

/// Volume of the Euclidean unit ball in R^n, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

/// One node of a rule on the unit sphere S^{n-1}.
struct SphereNode {
  std::vector<double> u;
  double weight;
};

/// Deterministic quadrature rule on S^{n-1} with roughly `nodes` points.
/// n = 1: the two points ±1. n = 3: Gauss-Legendre in the height times
/// uniform azimuth. n = 4: Gauss-Legendre in sin^2 of the first Hopf angle
/// times uniform angles on both circles. All rules integrate polynomials of
/// degree <= 2 exactly and are symmetric under u -> -u.
std::vector<SphereNode> sphere_rule(int n, std::size_t nodes);

/// s(K) = (1/kappa_n) * integral over S^{n-1} of h(K,u) u du.
/// In the plane the integral is split at every kink of h(K, .) and integrated
/// by 3-point Gauss-Legendre on `nodes` uniform arcs, which makes it accurate
/// to rounding; in higher dimensions `sphere_rule` is used.
std::vector<double> steiner_point(const Polytope& k, std::size_t nodes);

/// Steiner point rounded to the dyadic grid 2^-40, so it can enter exact
/// polytope arithmetic.
RPoint steiner_point_rational(const Polytope& k, std::size_t nodes);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t count, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace minkval
