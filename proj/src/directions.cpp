#include "minkval/directions.hpp"

#include <cmath>
#include <numbers>

#include "minkval/rng.hpp"

namespace minkval {

std::vector<RPoint> sample_directions(int n, std::size_t count, std::uint64_t seed) {
  const auto dim = static_cast<std::size_t>(n);
  std::vector<RPoint> out;
  for (std::size_t i = 0; i < dim && out.size() < count; ++i) {
    out.push_back(RPoint::unit(dim, i));
    if (out.size() < count) out.push_back(-RPoint::unit(dim, i));
  }
  RPoint ones(dim);
  for (std::size_t i = 0; i < dim; ++i) ones[i] = 1;
  if (out.size() < count) out.push_back(ones);
  if (out.size() < count) out.push_back(-ones);
  SplitMix64 g(seed);
  while (out.size() < count) {
    RPoint v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = g.uniform_int(-5, 5);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<RPoint> circle_directions(std::size_t count) {
  std::vector<RPoint> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    out.push_back(RPoint{round_to_dyadic(std::cos(t), 20), round_to_dyadic(std::sin(t), 20)});
  }
  return out;
}

std::vector<RPoint> comparison_directions(int n) {
  if (n == 2) return circle_directions(64);
  return sample_directions(n, 64);
}

}  // namespace minkval
