#pragma once

#include <cstdint>
#include <vector>

#include "minkval/point.hpp"

namespace minkval {

/// Shared deterministic direction set: ±e_i, then ±(1,...,1), then seeded
/// random integer vectors with entries in [-5, 5], truncated to `count`.
std::vector<RPoint> sample_directions(int n, std::size_t count, std::uint64_t seed = 0x5eed);

/// Rational approximations (denominator 2^20) of `count` equally spaced unit
/// vectors on the circle, starting at angle 0.
std::vector<RPoint> circle_directions(std::size_t count);

/// Default direction set used for approximate equality of bodies in R^n.
std::vector<RPoint> comparison_directions(int n);

}  // namespace minkval
