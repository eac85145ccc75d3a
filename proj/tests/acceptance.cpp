// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "minkval/audit.hpp"
#include "minkval/body_zoo.hpp"
#include "minkval/directions.hpp"
#include "minkval/mcmullen.hpp"
#include "minkval/mixed_volume.hpp"
#include "minkval/operators.hpp"
#include "minkval/rng.hpp"
#include "minkval/steiner.hpp"
#include "oracles.hpp"

using namespace minkval;

namespace {

// Pinned tolerances. Everything not listed here is compared exactly.
constexpr double kSteinerOracleTol = 1e-6;
constexpr double kSteinerSymmetryTol = 1e-6;
constexpr double kSteinerAdditivityTol = 2e-6;
constexpr double kSteinerRotationTol = 2e-6;
constexpr std::size_t kOracleNodes = std::size_t{1} << 20;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
};

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Polytope hypercube(int n) {
  std::vector<SegmentSpec> gens;
  for (int i = 0; i < n; ++i) gens.emplace_back(RPoint::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
  return cube_from_segments(gens);
}

Outcome rs_equality() {
  Outcome o;
  o.require(rs_check(simplex(2)).ratio == 6, "simplex(2) ratio != 6");
  o.require(rs_check(simplex(3)).ratio == 20, "simplex(3) ratio != 20");
  o.require(rs_check(simplex(2)).upper_tight && rs_check(simplex(3)).upper_tight, "simplex not upper tight");
  o.require(rs_check(hypercube(2)).ratio == 4, "[-1,1]^2 ratio != 4");
  o.require(rs_check(hypercube(3)).ratio == 8, "[-1,1]^3 ratio != 8");
  o.note = o.ok ? "ratios 6, 20, 4, 8" : o.note;
  return o;
}

Outcome rs_bounds() {
  Outcome o;
  Rational lo[2], hi[2];
  for (int n : {2, 3}) {
    const auto corpus = make_corpus({n, 200, 2000 + static_cast<std::uint64_t>(n)});
    auto& l = lo[n - 2];
    auto& h = hi[n - 2];
    l = Rational(binomial(2 * n, n));
    h = 0;
    for (const auto& k : corpus) {
      o.require(affine_dim(k) == n, "corpus body not full-dimensional");
      const RsReport r = rs_check(k);
      o.require(r.within_bounds, "ratio " + to_string(r.ratio) + " outside bounds");
      l = std::min(l, r.ratio);
      h = std::max(h, r.ratio);
    }
  }
  if (o.ok)
    o.note = "200 bodies each; n=2 ratios in [" + to_decimal(lo[0], 3) + ", " + to_decimal(hi[0], 3) + "], n=3 in [" +
             to_decimal(lo[1], 3) + ", " + to_decimal(hi[1], 3) + "]";
  return o;
}

Outcome cylinder_identity() {
  Outcome o;
  struct Pair {
    std::vector<RPoint> l;
    RPoint s;
  };
  const std::vector<Pair> pairs2{{{{-1, 0}, {1, 0}}, {0, 1}},
                                 {{{0, 0}, {2, 1}}, {1, 3}},
                                 {{{-1, 1}, {3, 2}}, {make_rational(1, 2), -2}}};
  const std::vector<Pair> pairs3{{{{-1, -1, 0}, {1, -1, 0}, {-1, 1, 0}, {1, 1, 0}}, {0, 0, 1}},
                                 {{{0, 0, 0}, {2, 0, 1}, {0, 1, 0}}, {1, 1, 1}},
                                 {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {0, 0, 3}}};
  int checked = 0;
  for (int n : {2, 3}) {
    const auto corpus = make_corpus({n, 50, 3000 + static_cast<std::uint64_t>(n)});
    for (const auto& p : n == 2 ? pairs2 : pairs3) {
      BuiltinParams params;
      params.L = canonicalize(p.l, n);
      params.S = segment(p.s);
      const OperatorSpec op = builtin("cylinder", n, params);
      const Rational c = volume(minkowski_sum(*params.L, *params.S));
      o.require(c > 0, "dim(L+S) < n");
      for (const auto& k : corpus) {
        o.require(volume(apply(op, k)) == c * volume(k), "volume(Phi(K)) != V(L+S) V(K)");
        ++checked;
      }
    }
  }
  if (o.ok) o.note = std::to_string(checked) + " (pair, body) cases over n=2,3";
  return o;
}

Outcome dichotomy() {
  Outcome o;
  for (int n = 2; n <= 4; ++n) {
    const std::string tag = " at n=" + std::to_string(n);
    o.require(dichotomy_data(builtin("dbody", n), n) == 0, "dbody" + tag);
    o.require(dichotomy_data(builtin("ab_reflect", n), n) == 0, "ab_reflect" + tag);
    o.require(dichotomy_data(builtin("cylinder", n), n) == n - 1, "cylinder" + tag);
    for (const auto& name : builtin_names()) {
      const OperatorSpec op = builtin(name, n);
      const int d = dichotomy_data(op, n);
      if (d >= 1 && d <= n - 2) {
        // Only an operator without volume constraints may land here.
        const auto corpus = make_corpus({n, 5, 4000});
        const EvalMode mode = default_mode(op);
        const bool lvc = vc_ratios(op, corpus, mode).min > 0;
        const bool uvc = scale_divergence_probe(op, corpus[0], 4, mode).trend == Trend::Constant;
        o.require(!(lvc && uvc), name + " is VC with dichotomy value " + std::to_string(d) + tag);
      }
    }
  }
  if (o.ok) o.note = "dbody, ab_reflect -> 0; cylinder -> n-1; no catalog value in 1..n-2 (n=2,3,4)";
  return o;
}

Outcome monomial() {
  Outcome o;
  int bodies = 0, flat = 0;
  for (int n : {2, 3}) {
    std::vector<Polytope> corpus = make_corpus({n, 40, 5000 + static_cast<std::uint64_t>(n)});
    for (int i = 0; i < 10; ++i) corpus.push_back(random_flat_polytope(n, i % n, 5100 + static_cast<std::uint64_t>(i)));
    for (const char* name : {"dbody", "cylinder"}) {
      const OperatorSpec op = builtin(name, n);
      for (const auto& k : corpus) {
        const VolumePolyRecord r = volume_poly(op, k);
        o.require(r.validated && !r.degree_raised, std::string(name) + ": degree bound not validated");
        o.require(r.residual == 0, std::string(name) + ": nonzero held-out residual");
        const bool full = affine_dim(k) == n;
        for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
          const bool must_vanish = !full || j != static_cast<std::size_t>(n);
          if (must_vanish) o.require(r.coeffs[j] == 0, std::string(name) + ": v_" + std::to_string(j) + " != 0");
        }
        if (full) o.require(r.coeffs[static_cast<std::size_t>(n)] != 0, std::string(name) + ": v_n = 0");
        ++bodies;
        if (!full) ++flat;
      }
    }
  }
  if (o.ok) o.note = std::to_string(bodies) + " (operator, body) fits, " + std::to_string(flat) + " on lower-dimensional bodies";
  return o;
}

Outcome mcmullen_extraction() {
  Outcome o;
  int records = 0;
  for (int n : {2, 3}) {
    const auto corpus = make_corpus({n, 20, 6000 + static_cast<std::uint64_t>(n)});
    const auto dirs = sample_directions(n, 16);
    const OperatorSpec d = builtin("dbody", n);
    BuiltinParams params;
    std::vector<SegmentSpec> gens;
    for (int i = 0; i + 1 < n; ++i) gens.emplace_back(RPoint::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
    params.L = zonotope(gens);
    params.S = segment(RPoint::unit(static_cast<std::size_t>(n), static_cast<std::size_t>(n - 1)));
    const OperatorSpec cyl = builtin("cylinder", n, params);
    for (const auto& k : corpus) {
      const Rational vk = volume(k);
      const auto rd = decompose(d, k, dirs, EvalMode::exact());
      const auto rc = decompose(cyl, k, dirs, EvalMode::exact());
      for (std::size_t i = 0; i < dirs.size(); ++i) {
        const RPoint& u = dirs[i];
        for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j) {
          const Rational expect_d = j == 1 ? support(k, u) + support(k, -u) : Rational(0);
          o.require(rd[i].components[j] == expect_d, "dbody f_" + std::to_string(j));
          Rational expect_c = 0;
          if (j == 0) expect_c = support(*params.L, u);
          if (j == static_cast<std::size_t>(n)) expect_c = vk * support(*params.S, u);
          o.require(rc[i].components[j] == expect_c, "cylinder f_" + std::to_string(j));
        }
        records += 2;
      }
    }
  }
  if (o.ok) o.note = std::to_string(records) + " records (20 bodies x 16 directions x 2 operators, n=2,3)";
  return o;
}

Outcome example_matrix() {
  Outcome o;
  const int n = 2;
  const auto corpus = make_corpus({n, 20, 42});
  for (const char* name : {"dbody_plus_steiner", "cylinder_plus_steiner"}) {
    const OperatorSpec op = builtin(name, n);
    const CheckResult r = translation_invariance_check(op, corpus, 10, 42, default_mode(op));
    o.require(r.failed(), std::string(name) + " passed translation invariance in 10 trials");
  }
  for (const char* name : {"hull_sym", "cylinder_dvol"}) {
    const OperatorSpec op = builtin(name, n);
    const CheckResult r = valuation_check(op, corpus, 100, 42, default_mode(op));
    o.require(r.failed(), std::string(name) + " passed the valuation check in 100 trials");
  }
  const OperatorSpec e5 = builtin("cylinder_plus_dbody", n);
  const VcRatios v5 = vc_ratios(e5, corpus, EvalMode::exact());
  o.require(v5.min > 0, "cylinder_plus_dbody: c_hat = 0");
  const ScaleProbe probe = scale_divergence_probe(e5, unit_cube(2), 6, EvalMode::exact());
  for (std::size_t i = 1; i < probe.ratios.size(); ++i)
    o.require(probe.ratios[i] > probe.ratios[i - 1], "cylinder_plus_dbody: scale ratios not strictly increasing");
  const Rational growth = probe.ratios.back() / probe.ratios.front();
  o.require(growth > 10, "cylinder_plus_dbody: r(64)/r(1) <= 10");
  const VcRatios v6 = vc_ratios(builtin("degenerate_cylinder", n), corpus, EvalMode::exact());
  o.require(v6.max == 0, "degenerate_cylinder: C_hat != 0");
  if (o.ok) o.note = "r(64)/r(1) = " + to_string(growth) + ", degenerate C_hat = 0";
  return o;
}

MixedVolumeQuery mv_query(int n, SplitMix64& g, bool forced_degenerate) {
  MixedVolumeQuery q;
  if (forced_degenerate) {
    RPoint v(static_cast<std::size_t>(n));
    while (v.is_zero())
      for (std::size_t i = 0; i < v.dim(); ++i) v[i] = g.uniform_int(-3, 3);
    RPoint t(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < t.dim(); ++i) t[i] = g.uniform_int(-4, 4);
    q.bodies.push_back(segment(v));
    q.bodies.push_back(translate(scale(segment(v), make_rational(g.uniform_int(1, 5), 2)), t));
    for (int i = 2; i < n; ++i) q.bodies.push_back(random_polytope({n, 1, g.next()}, 0));
    return q;
  }
  for (int i = 0; i < n; ++i) {
    if (g.uniform_int(0, 2) == 0) {
      q.bodies.push_back(random_flat_polytope(n, static_cast<int>(g.uniform_int(0, n - 1)), g.next()));
    } else {
      q.bodies.push_back(random_polytope({n, 1, g.next()}, 0));
    }
  }
  return q;
}

Outcome mixed_volume_suite() {
  Outcome o;
  const auto square = canonicalize(std::vector<RPoint>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, 3);
  const auto seg = canonicalize(std::vector<RPoint>{{0, 0, 0}, {0, 0, 1}}, 3);
  o.require(mixed_volume({{square, square, seg}}) == make_rational(1, 3), "V(Q,Q,S) != 1/3");

  MixedVolumeCalculator calc;
  int degenerate = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + i % 2;
    SplitMix64 g(derive_seed(8000, static_cast<std::uint64_t>(i)));
    const MixedVolumeQuery q = mv_query(n, g, i % 4 == 0);
    const Rational v = calc.mixed_volume(q);
    const std::string tag = " (query " + std::to_string(i) + ")";

    const Polytope& k1 = q.bodies[0];
    MixedVolumeQuery diag{std::vector<Polytope>(static_cast<std::size_t>(n), k1)};
    o.require(calc.mixed_volume(diag) == volume(k1), "diagonal" + tag);

    MixedVolumeQuery rev{std::vector<Polytope>(q.bodies.rbegin(), q.bodies.rend())};
    MixedVolumeQuery rot = q;
    std::rotate(rot.bodies.begin(), rot.bodies.begin() + 1, rot.bodies.end());
    o.require(calc.mixed_volume(rev) == v && calc.mixed_volume(rot) == v, "symmetry" + tag);

    const Polytope extra = random_polytope({n, 1, g.next()}, 0);
    const Rational lambda = make_rational(g.uniform_int(1, 7), 3);
    MixedVolumeQuery sum = q, other = q, scaled = q;
    sum.bodies[0] = minkowski_sum(k1, extra);
    other.bodies[0] = extra;
    scaled.bodies[0] = scale(k1, lambda);
    o.require(calc.mixed_volume(sum) == v + calc.mixed_volume(other), "additivity" + tag);
    o.require(calc.mixed_volume(scaled) == lambda * v, "homogeneity" + tag);

    MixedVolumeQuery moved = q;
    for (auto& b : moved.bodies) {
      RPoint t(static_cast<std::size_t>(n));
      for (std::size_t c = 0; c < t.dim(); ++c) t[c] = make_rational(g.uniform_int(-9, 9), 4);
      b = translate(b, t);
    }
    o.require(calc.mixed_volume(moved) == v, "translation invariance" + tag);

    const bool criterion = positivity_criterion(q);
    o.require(criterion == (v > 0), "positivity equivalence" + tag);
    if (!criterion) ++degenerate;
  }
  o.require(degenerate >= 10, "only " + std::to_string(degenerate) + " degenerate queries");
  if (o.ok) o.note = "50 queries, " + std::to_string(degenerate) + " degenerate; V(Q,Q,S) = 1/3";
  return o;
}

Outcome polarization() {
  Outcome o;
  for (int n : {2, 3}) {
    const OperatorSpec op = builtin("dbody", n);
    const auto dirs = sample_directions(n, 16);
    for (std::uint64_t s = 0; s < 10; ++s) {
      std::vector<Polytope> segs;
      for (const auto& g : random_generators(n, n, 9000 + s)) segs.push_back(segment(g.v()));
      const CheckResult r = polarization_check(op, segs, 1, dirs, EvalMode::exact());
      o.require(r.passed(), "n=" + std::to_string(n) + " family " + std::to_string(s) + ": " + r.detail);
    }
  }
  if (o.ok) o.note = "10 families each at n=2,3";
  return o;
}

Outcome steiner() {
  Outcome o;
  const auto polygons = make_corpus({2, 10, 10000});
  const std::size_t nodes = EvalMode::approx().nodes;
  const auto rotations = rational_rotations(2);
  double worst_oracle = 0, worst_sym = 0, worst_add = 0, worst_rot = 0;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    const Polytope& k = polygons[i];
    const Polytope& l = polygons[(i + 1) % polygons.size()];
    const auto s = steiner_point(k, nodes);
    worst_oracle = std::max(worst_oracle, dist(s, oracle::steiner_trapezoid_2d(k.vertices(), kOracleNodes)));
    worst_sym = std::max(worst_sym, dist(steiner_point(dbody(k), nodes), {0.0, 0.0}));
    const auto sl = steiner_point(l, nodes);
    const auto skl = steiner_point(minkowski_sum(k, l), nodes);
    worst_add = std::max(worst_add, dist(skl, {s[0] + sl[0], s[1] + sl[1]}));
    for (const auto& g : rotations) {
      const auto sg = steiner_point(linear_image(k, g), nodes);
      const std::vector<double> gs{g(0, 0).get_d() * s[0] + g(0, 1).get_d() * s[1],
                                   g(1, 0).get_d() * s[0] + g(1, 1).get_d() * s[1]};
      worst_rot = std::max(worst_rot, dist(sg, gs));
    }
  }
  o.require(worst_oracle <= kSteinerOracleTol, "oracle distance above tolerance");
  o.require(worst_sym <= kSteinerSymmetryTol, "|s(DK)| above tolerance");
  o.require(worst_add <= kSteinerAdditivityTol, "additivity above tolerance");
  o.require(worst_rot <= kSteinerRotationTol, "rotation covariance above tolerance");
  char buf[200];
  std::snprintf(buf, sizeof buf, "max errors: oracle %.2e, |s(DK)| %.2e, additivity %.2e, rotation %.2e", worst_oracle,
                worst_sym, worst_add, worst_rot);
  o.note = o.ok ? std::string(buf) : o.note + "; " + buf;
  return o;
}

Outcome classification() {
  Outcome o;
  struct Expect {
    const char* name;
    int n;
    Branch branch;
  };
  const Expect cases[] = {
      {"dbody", 2, Branch::HomogeneousDeg1},
      {"dbody", 3, Branch::HomogeneousDeg1},
      {"cylinder", 2, Branch::Cylinder},
      {"cylinder", 3, Branch::Cylinder},
      {"cylinder_plus_dbody", 2, Branch::NotVC},
      {"hull_sym", 2, Branch::NotValuation},
      {"dbody_plus_steiner", 2, Branch::NotTranslationInvariant},
      {"cylinder_plus_steiner", 2, Branch::NotTranslationInvariant},
  };
  for (const auto& c : cases) {
    AuditConfig cfg;
    cfg.corpus = {c.n, 20, 42};
    cfg.trials = 40;
    const AuditReport r = classify(builtin(c.name, c.n), cfg);
    o.require(r.branch == c.branch, std::string(c.name) + " at n=" + std::to_string(c.n) + " -> " +
                                        std::string(branch_name(r.branch)));
  }
  if (o.ok) o.note = "dbody, cylinder (n=2,3), cylinder_plus_dbody, hull_sym, dbody_plus_steiner, cylinder_plus_steiner";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Rogers-Shephard equality cases", rs_equality},
      {"Rogers-Shephard bounds on random bodies", rs_bounds},
      {"cylinder volume identity", cylinder_identity},
      {"dichotomy of point images", dichotomy},
      {"volume polynomial is a monomial", monomial},
      {"homogeneous decomposition of dbody and cylinder", mcmullen_extraction},
      {"example matrix", example_matrix},
      {"mixed volume suite", mixed_volume_suite},
      {"polarization of f_1 for dbody", polarization},
      {"Steiner point properties", steiner},
      {"classification branches", classification},
  };
  int failures = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %s  %s: %s [%.1fs]\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first,
                o.note.c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of %zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failures, criteria.size(),
              total);
  return failures == 0 ? 0 : 1;
}
