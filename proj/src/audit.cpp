#include "minkval/audit.hpp"

#include <cmath>
#include <string>

#include "compare.hpp"
#include "minkval/errors.hpp"
#include "minkval/mcmullen.hpp"
#include "minkval/parallel.hpp"
#include "minkval/rng.hpp"

namespace minkval {
namespace {

using detail::at_most;
using detail::same_body;
using detail::same_value;

constexpr std::size_t kNestedBodies = 20;
constexpr std::size_t kRotationBodies = 10;
constexpr std::size_t kBranchBodies = 5;

// First failure in index order, so the report does not depend on the
// number of workers.
CheckResult first_failure(std::string name, std::vector<std::optional<Witness>> found, std::string detail) {
  for (auto& w : found)
    if (w) return CheckResult::fail(std::move(name), std::move(detail), std::move(*w));
  return CheckResult::pass(std::move(name));
}

CheckResult tag(CheckResult r, const EvalMode& mode) {
  r.approx = !mode.is_exact();
  r.tolerance = r.approx ? mode.tolerance : 0;
  return r;
}

RPoint seeded_shift(int n, std::uint64_t seed) {
  SplitMix64 g(seed);
  RPoint t(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < t.dim(); ++i) t[i] = make_rational(g.uniform_int(-8, 8), 4);
  if (t.is_zero()) t[0] = 1;
  return t;
}

bool contained(const Polytope& inner, const Polytope& outer, const EvalMode& mode) {
  if (mode.is_exact()) return contains(outer, inner);
  for (const auto& u : comparison_directions(inner.ambient_dim()))
    if (!at_most(support(inner, u), support(outer, u), mode)) return false;
  return true;
}

Trend classify_trend(const std::vector<Rational>& r, const EvalMode& mode) {
  bool constant = true, inc = true, dec = true;
  for (std::size_t i = 1; i < r.size(); ++i) {
    const bool same = same_value(r[i], r[i - 1], mode);
    constant = constant && same_value(r[i], r[0], mode);
    inc = inc && !same && r[i] > r[i - 1];
    dec = dec && !same && r[i] < r[i - 1];
  }
  if (constant) return Trend::Constant;
  if (inc) return Trend::Increasing;
  if (dec) return Trend::Decreasing;
  return Trend::Irregular;
}

// D(Phi(lambda K)) = lambda D(Phi(K)) for lambda in {2, 3}.
CheckResult homogeneity_branch(const OperatorSpec& op, std::span<const Polytope> corpus, const EvalMode& mode) {
  const std::string name = "branch_homogeneous_deg1";
  for (std::size_t i = 0; i < std::min(kBranchBodies, corpus.size()); ++i) {
    const Polytope base = dbody(apply(op, corpus[i], mode));
    for (long l : {2L, 3L}) {
      if (!same_body(dbody(apply(op, scale(corpus[i], l), mode)), scale(base, l), mode)) {
        Witness w;
        w.body = corpus[i];
        w.value = Rational(l);
        w.trial = i;
        return tag(CheckResult::fail(name, "symmetrized image is not 1-homogeneous", std::move(w)), mode);
      }
    }
  }
  return tag(CheckResult::pass(name), mode);
}

// h(D Phi(K), u) = h(D L_0, u) + V(K) h(D L_n, u), with the middle components
// odd in u and f_n / V(K) independent of K.
CheckResult cylinder_branch(const OperatorSpec& op, std::span<const Polytope> corpus, const EvalMode& mode) {
  const std::string name = "branch_cylinder";
  const int n = corpus[0].ambient_dim();
  const auto nu = static_cast<std::size_t>(n);
  std::vector<RPoint> dirs = sample_directions(n, 16);
  const std::size_t m = dirs.size();
  for (std::size_t d = 0; d < m; ++d) dirs.push_back(-dirs[d]);
  const auto bodies = corpus.first(std::min(kBranchBodies, corpus.size()));
  const auto prop = fn_volume_proportionality(op, bodies, dirs, mode);
  if (!prop.check.passed()) {
    auto r = prop.check;
    r.name = name;
    return tag(r, mode);
  }
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const auto rec = decompose(op, bodies[i], dirs, mode);
    const Polytope dimg = dbody(apply(op, bodies[i], mode));
    for (std::size_t d = 0; d < m; ++d) {
      const auto& f = rec[d].components;
      const auto& g = rec[m + d].components;
      auto fail = [&](std::string detail, Rational value, Rational expected) {
        Witness w;
        w.body = bodies[i];
        w.vector = dirs[d];
        w.value = std::move(value);
        w.expected = std::move(expected);
        w.trial = i;
        return tag(CheckResult::fail(name, std::move(detail), std::move(w)), mode);
      };
      for (std::size_t j = 1; j < nu; ++j)
        if (!same_value(f[j] + g[j], 0, mode)) return fail("middle component is not odd", f[j] + g[j], 0);
      const Rational expected = f[0] + g[0] + f[nu] + g[nu];
      const Rational actual = support(dimg, dirs[d]);
      if (!same_value(actual, expected, mode)) return fail("D Phi(K) differs from D L_0 + V(K) D L_n", actual, expected);
    }
  }
  return tag(CheckResult::pass(name), mode);
}

void core_checks(AuditReport& rep, std::span<const Polytope> corpus) {
  const auto& op = rep.op;
  const auto& mode = rep.mode;
  const auto& cfg = rep.config;
  rep.checks.push_back(valuation_check(op, corpus, cfg.trials, cfg.seed, mode));
  rep.checks.push_back(translation_invariance_check(op, corpus, cfg.trials, derive_seed(cfg.seed, 1), mode));

  rep.vc = vc_ratios(op, corpus, mode);
  if (rep.vc->min > 0 && (mode.is_exact() || to_double(rep.vc->min) > mode.tolerance)) {
    rep.checks.push_back(tag(CheckResult::pass("lvc", "min ratio " + to_string(rep.vc->min)), mode));
  } else {
    Witness w;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (rep.vc->ratios[i] == rep.vc->min) {
        w.body = corpus[i];
        w.trial = i;
        break;
      }
    w.value = rep.vc->min;
    rep.checks.push_back(tag(CheckResult::fail("lvc", "image volume vanishes on the corpus", std::move(w)), mode));
  }

  const int n = corpus[0].ambient_dim();
  rep.scale = scale_divergence_probe(op, unit_cube(n), cfg.scale_steps, mode);
  if (rep.scale->trend == Trend::Constant) {
    rep.checks.push_back(tag(CheckResult::pass("uvc", "ratio constant under scaling"), mode));
  } else {
    Witness w;
    w.body = unit_cube(n);
    w.value = rep.scale->ratios.back();
    w.expected = rep.scale->ratios.front();
    rep.checks.push_back(tag(CheckResult::fail("uvc",
                                               "ratio " + std::string(trend_name(rep.scale->trend)) +
                                                   " under scaling, growth exponent " +
                                                   std::to_string(rep.scale->exponent),
                                               std::move(w)),
                             mode));
  }
}

void decide_branch(AuditReport& rep, std::span<const Polytope> corpus) {
  if (!rep.checks[0].passed()) {
    rep.branch = Branch::NotValuation;
    return;
  }
  if (!rep.checks[1].passed()) {
    rep.branch = Branch::NotTranslationInvariant;
    return;
  }
  if (!rep.checks[2].passed() || !rep.checks[3].passed()) {
    rep.branch = Branch::NotVC;
    return;
  }
  const int n = corpus[0].ambient_dim();
  try {
    rep.dichotomy_dim = dichotomy_data(rep.op, n, rep.mode);
    CheckResult verdict;
    if (*rep.dichotomy_dim == 0) {
      verdict = homogeneity_branch(rep.op, corpus, rep.mode);
      rep.branch = verdict.passed() ? Branch::HomogeneousDeg1 : Branch::Undetermined;
    } else if (*rep.dichotomy_dim == n - 1) {
      verdict = cylinder_branch(rep.op, corpus, rep.mode);
      rep.branch = verdict.passed() ? Branch::Cylinder : Branch::Undetermined;
    } else {
      rep.branch = Branch::Undetermined;
      rep.model_violation = "point image has dimension " + std::to_string(*rep.dichotomy_dim) + ", outside {0, " +
                            std::to_string(n - 1) + "}";
      return;
    }
    rep.checks.push_back(verdict);
  } catch (const ModelViolation& e) {
    rep.branch = Branch::Undetermined;
    rep.model_violation = e.what();
  }
}

AuditReport start(const OperatorSpec& op, const AuditConfig& config) {
  config.corpus.validate();
  if (config.trials < 1) throw InvalidArgument("audit needs at least one trial");
  if (config.scale_steps < 1) throw InvalidArgument("scale probe needs at least one step");
  AuditReport rep{op, config, config.mode.value_or(default_mode(op)), {}, {}, {}, {}, Branch::Undetermined, {}};
  if (op.fixed_dim() && *op.fixed_dim() != config.corpus.dim)
    throw DimensionMismatch("operator payload dimension differs from the corpus dimension");
  if (rep.mode.is_exact() && !op.is_exact())
    throw ExactModeViolation("operator uses the Steiner point; use approximate mode");
  return rep;
}

}  // namespace

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::HomogeneousDeg1:
      return "homogeneous_deg1";
    case Branch::Cylinder:
      return "cylinder";
    case Branch::NotVC:
      return "not_VC";
    case Branch::NotValuation:
      return "not_valuation";
    case Branch::NotTranslationInvariant:
      return "not_translation_invariant";
    case Branch::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

std::string_view trend_name(Trend t) {
  switch (t) {
    case Trend::Constant:
      return "constant";
    case Trend::Increasing:
      return "increasing";
    case Trend::Decreasing:
      return "decreasing";
    case Trend::Irregular:
      return "irregular";
  }
  return "irregular";
}

VcRatios vc_ratios(const OperatorSpec& op, std::span<const Polytope> corpus, const EvalMode& mode) {
  if (corpus.empty()) throw InvalidArgument("vc_ratios needs a nonempty corpus");
  VcRatios out;
  out.ratios = parallel_map(corpus.size(), [&](std::size_t i) {
    const Rational v = volume(corpus[i]);
    if (sgn(v) == 0) throw DegenerateInput("vc_ratios: corpus body " + std::to_string(i) + " has zero volume");
    return Rational(volume(apply(op, corpus[i], mode)) / v);
  });
  out.min = *std::min_element(out.ratios.begin(), out.ratios.end());
  out.max = *std::max_element(out.ratios.begin(), out.ratios.end());
  return out;
}

ScaleProbe scale_divergence_probe(const OperatorSpec& op, const Polytope& k, int steps, const EvalMode& mode) {
  const Rational v = volume(k);
  if (sgn(v) == 0) throw DegenerateInput("scale probe needs a full-dimensional body");
  const auto n = static_cast<unsigned>(k.ambient_dim());
  ScaleProbe p;
  Rational lambda = 1;
  for (int i = 0; i <= steps; ++i, lambda *= 2) {
    p.lambdas.push_back(lambda);
    p.ratios.push_back(volume(apply(op, scale(k, lambda), mode)) / (pow(lambda, n) * v));
  }
  p.trend = classify_trend(p.ratios, mode);
  const double a = to_double(p.ratios[p.ratios.size() - 2]);
  const double b = to_double(p.ratios.back());
  p.exponent = a > 0 && b > 0 ? std::log2(b / a) : 0.0;
  return p;
}

CheckResult valuation_check(const OperatorSpec& op, std::span<const Polytope> corpus, int trials,
                            std::uint64_t seed, const EvalMode& mode) {
  if (corpus.empty()) throw InvalidArgument("valuation_check needs a nonempty corpus");
  auto found = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t i) -> std::optional<Witness> {
    const std::uint64_t s = derive_seed(seed, i);
    const Polytope& p = corpus[s % corpus.size()];
    SlicePair sp = random_slice_pair(p, s);
    const Polytope lhs = minkowski_sum(apply(op, sp.upper, mode), apply(op, sp.lower, mode));
    const Polytope rhs = minkowski_sum(apply(op, p, mode), apply(op, sp.middle, mode));
    if (same_body(lhs, rhs, mode)) return std::nullopt;
    Witness w;
    w.body = p;
    w.other = sp.middle;
    w.seed = s;
    w.trial = i;
    return w;
  });
  return tag(first_failure("valuation", std::move(found), "Phi(K) + Phi(L) != Phi(K u L) + Phi(K n L)"), mode);
}

CheckResult translation_invariance_check(const OperatorSpec& op, std::span<const Polytope> corpus, int trials,
                                         std::uint64_t seed, const EvalMode& mode) {
  if (corpus.empty()) throw InvalidArgument("translation check needs a nonempty corpus");
  auto found = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t i) -> std::optional<Witness> {
    const std::uint64_t s = derive_seed(seed, i);
    const Polytope& k = corpus[i % corpus.size()];
    const RPoint t = seeded_shift(k.ambient_dim(), s);
    if (same_body(apply(op, translate(k, t), mode), apply(op, k, mode), mode)) return std::nullopt;
    Witness w;
    w.body = k;
    w.vector = t;
    w.seed = s;
    w.trial = i;
    return w;
  });
  return tag(first_failure("translation_invariance", std::move(found), "Phi(K + t) != Phi(K)"), mode);
}

CheckResult osym_check(const OperatorSpec& op, std::span<const Polytope> corpus, const EvalMode& mode) {
  auto found = parallel_map(corpus.size(), [&](std::size_t i) -> std::optional<Witness> {
    const Polytope img = apply(op, corpus[i], mode);
    if (same_body(reflect(img), img, mode)) return std::nullopt;
    Witness w;
    w.body = corpus[i];
    w.trial = i;
    return w;
  });
  return tag(first_failure("o_symmetrization", std::move(found), "Phi(K) != -Phi(K)"), mode);
}

CheckResult monotonicity_check(const OperatorSpec& op, std::span<const Polytope> corpus, std::uint64_t seed,
                               const EvalMode& mode) {
  const std::size_t count = std::min(kNestedBodies, corpus.size());
  auto found = parallel_map(2 * count, [&](std::size_t i) -> std::optional<Witness> {
    const Polytope& outer = corpus[i / 2];
    const std::uint64_t s = derive_seed(seed, i);
    Polytope inner = outer;
    if (i % 2 == 0) {
      inner = random_slice_pair(outer, s).upper;
    } else {
      const RPoint c = vertex_centroid(outer);
      inner = translate(scale(translate(outer, -c), make_rational(1, 2)), c);
    }
    if (contained(apply(op, inner, mode), apply(op, outer, mode), mode)) return std::nullopt;
    Witness w;
    w.body = outer;
    w.other = inner;
    w.seed = s;
    w.trial = i;
    return w;
  });
  return tag(first_failure("monotonicity", std::move(found), "K c L but Phi(K) not in Phi(L)"), mode);
}

std::vector<Matrix> rational_rotations(int n) {
  static const long triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}};
  std::vector<Matrix> out;
  const auto dim = static_cast<std::size_t>(n);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b)
      for (const auto& t : triples) {
        Matrix g = Matrix::identity(dim);
        const Rational c = make_rational(t[0], t[2]);
        const Rational s = make_rational(t[1], t[2]);
        g(a, a) = c;
        g(a, b) = -s;
        g(b, a) = s;
        g(b, b) = c;
        out.push_back(std::move(g));
      }
  return out;
}

CheckResult rotation_covariance_check(const OperatorSpec& op, std::span<const Polytope> corpus,
                                      std::span<const Matrix> rotations, const EvalMode& mode) {
  if (rotations.empty()) return tag(CheckResult::skipped("rotation_covariance", "no rotations in R^1"), mode);
  const std::size_t count = std::min(kRotationBodies, corpus.size());
  auto found = parallel_map(count * rotations.size(), [&](std::size_t i) -> std::optional<Witness> {
    const Polytope& k = corpus[i / rotations.size()];
    const Matrix& g = rotations[i % rotations.size()];
    if (same_body(apply(op, linear_image(k, g), mode), linear_image(apply(op, k, mode), g), mode))
      return std::nullopt;
    Witness w;
    w.body = k;
    w.trial = i;
    w.seed = i % rotations.size();
    return w;
  });
  return tag(first_failure("rotation_covariance", std::move(found), "Phi(gK) != g Phi(K)"), mode);
}

const CheckResult* AuditReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

int AuditReport::exit_code() const {
  if (!model_violation.empty()) return 2;
  for (std::size_t i = 0; i < std::min(kCoreChecks, checks.size()); ++i)
    if (checks[i].failed()) return 1;
  return 0;
}

AuditReport classify(const OperatorSpec& op, const AuditConfig& config) {
  AuditReport rep = start(op, config);
  const auto corpus = make_corpus(config.corpus);
  core_checks(rep, corpus);
  decide_branch(rep, corpus);
  return rep;
}

AuditReport audit(const OperatorSpec& op, const AuditConfig& config) {
  AuditReport rep = start(op, config);
  const auto corpus = make_corpus(config.corpus);
  core_checks(rep, corpus);
  rep.checks.push_back(osym_check(op, corpus, rep.mode));
  rep.checks.push_back(monotonicity_check(op, corpus, derive_seed(config.seed, 2), rep.mode));
  const auto rotations = rational_rotations(config.corpus.dim);
  rep.checks.push_back(rotation_covariance_check(op, corpus, rotations, rep.mode));
  if (rep.mode.is_exact()) {
    try {
      rep.checks.push_back(monomial_check(op, std::span(corpus).first(std::min<std::size_t>(10, corpus.size())),
                                          rep.mode));
    } catch (const DegreeExceeded& e) {
      rep.model_violation = e.what();
    }
  }
  decide_branch(rep, corpus);
  return rep;
}

}  // namespace minkval
