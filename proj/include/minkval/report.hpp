#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "minkval/polytope.hpp"

namespace minkval {

enum class CheckStatus { Pass, Fail, Skipped };

/// Data needed to replay a failure.
struct Witness {
  std::optional<Polytope> body;
  std::optional<Polytope> other;
  std::optional<RPoint> vector;     // shift, direction or coefficient index data
  std::optional<Rational> value;
  std::optional<Rational> expected;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  std::optional<Witness> witness;
  bool approx = false;
  double tolerance = 0;

  bool passed() const { return status == CheckStatus::Pass; }
  bool failed() const { return status == CheckStatus::Fail; }

  static CheckResult pass(std::string name, std::string detail = {}) {
    return {std::move(name), CheckStatus::Pass, std::move(detail), std::nullopt};
  }
  static CheckResult fail(std::string name, std::string detail, Witness w) {
    return {std::move(name), CheckStatus::Fail, std::move(detail), std::move(w)};
  }
  static CheckResult skipped(std::string name, std::string reason) {
    return {std::move(name), CheckStatus::Skipped, std::move(reason), std::nullopt};
  }
};

std::string_view status_name(CheckStatus s);

}  // namespace minkval
