#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minkval/body_zoo.hpp"
#include "minkval/operators.hpp"
#include "minkval/report.hpp"

namespace minkval {

enum class Branch { HomogeneousDeg1, Cylinder, NotVC, NotValuation, NotTranslationInvariant, Undetermined };
std::string_view branch_name(Branch b);

struct VcRatios {
  Rational min;
  Rational max;
  std::vector<Rational> ratios;  // V(Phi(K)) / V(K) per corpus body
};

/// Throws DegenerateInput on a zero-volume corpus body.
VcRatios vc_ratios(const OperatorSpec& op, std::span<const Polytope> corpus, const EvalMode& mode);

enum class Trend { Constant, Increasing, Decreasing, Irregular };
std::string_view trend_name(Trend t);

struct ScaleProbe {
  std::vector<Rational> lambdas;
  std::vector<Rational> ratios;  // V(Phi(lambda K)) / V(lambda K)
  Trend trend = Trend::Constant;
  double exponent = 0;  // log2 growth over the last step
};

/// lambda = 1, 2, 4, ..., 2^steps. Requires a full-dimensional body.
ScaleProbe scale_divergence_probe(const OperatorSpec& op, const Polytope& k, int steps, const EvalMode& mode);

/// Phi(K) + Phi(L) = Phi(P) + Phi(M) on random slice pairs of corpus bodies.
CheckResult valuation_check(const OperatorSpec& op, std::span<const Polytope> corpus, int trials,
                            std::uint64_t seed, const EvalMode& mode);
/// Phi(K + t) = Phi(K) for seeded rational shifts t.
CheckResult translation_invariance_check(const OperatorSpec& op, std::span<const Polytope> corpus, int trials,
                                         std::uint64_t seed, const EvalMode& mode);
CheckResult osym_check(const OperatorSpec& op, std::span<const Polytope> corpus, const EvalMode& mode);
/// Nested pairs K ⊂ L from slicing and from shrinking about an interior point.
CheckResult monotonicity_check(const OperatorSpec& op, std::span<const Polytope> corpus, std::uint64_t seed,
                               const EvalMode& mode);

/// Pythagorean plane rotations and their embeddings in every coordinate plane.
std::vector<Matrix> rational_rotations(int n);
CheckResult rotation_covariance_check(const OperatorSpec& op, std::span<const Polytope> corpus,
                                      std::span<const Matrix> rotations, const EvalMode& mode);

struct AuditConfig {
  CorpusSpec corpus{2, 100, 42};
  int trials = 100;
  std::uint64_t seed = 42;
  int scale_steps = 6;
  std::optional<EvalMode> mode;  // default_mode(op) when empty
};

struct AuditReport {
  OperatorSpec op;
  AuditConfig config;
  EvalMode mode;
  /// valuation, translation_invariance, lvc, uvc first; informational checks after.
  std::vector<CheckResult> checks;
  std::optional<VcRatios> vc;
  std::optional<ScaleProbe> scale;
  std::optional<int> dichotomy_dim;
  Branch branch = Branch::Undetermined;
  std::string model_violation;  // empty unless the model was left

  const CheckResult* find(std::string_view name) const;
  /// 0 all core checks pass, 1 some core check failed, 2 model violation.
  int exit_code() const;
};

inline constexpr std::size_t kCoreChecks = 4;

AuditReport audit(const OperatorSpec& op, const AuditConfig& config);

/// Branch only (a lighter audit without the informational checks).
AuditReport classify(const OperatorSpec& op, const AuditConfig& config);

}  // namespace minkval
