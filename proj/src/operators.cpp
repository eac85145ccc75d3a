#include "minkval/operators.hpp"

#include <array>
#include <string>

#include "minkval/body_zoo.hpp"
#include "minkval/errors.hpp"
#include "minkval/steiner.hpp"

namespace minkval {
namespace {

constexpr std::array<std::pair<NodeKind, std::string_view>, 13> kNodeNames{{
    {NodeKind::Identity, "identity"},
    {NodeKind::Reflect, "reflect"},
    {NodeKind::DBody, "dbody"},
    {NodeKind::Const, "const"},
    {NodeKind::Linear, "linear"},
    {NodeKind::VolSegment, "vol_segment"},
    {NodeKind::DVolSegment, "dvol_segment"},
    {NodeKind::CenterSteiner, "center_steiner"},
    {NodeKind::ReflectCenterSteiner, "reflect_center_steiner"},
    {NodeKind::SteinerPoint, "steiner_point"},
    {NodeKind::HullSymSteiner, "hull_sym_steiner"},
    {NodeKind::Sum, "sum"},
    {NodeKind::Scale, "scale"},
}};

void require_segment(const Polytope& s, const char* what) {
  if (affine_dim(s) != 1) throw InvalidArgument(std::string(what) + ": payload must be a segment");
}

void check_payload(const Polytope& payload, const Polytope& k) {
  if (payload.ambient_dim() != k.ambient_dim())
    throw DimensionMismatch("operator payload lives in R^" + std::to_string(payload.ambient_dim()) +
                            ", body in R^" + std::to_string(k.ambient_dim()));
}

RPoint steiner_of(const Polytope& k, const EvalMode& mode) {
  if (mode.is_exact())
    throw ExactModeViolation("Steiner-point node cannot be evaluated in exact mode");
  return steiner_point_rational(k, mode.nodes);
}

}  // namespace

EvalMode EvalMode::approx(std::size_t nodes, double tolerance) {
  if (nodes < 32) throw InvalidArgument("approximate mode needs at least 32 quadrature nodes");
  if (!(tolerance > 0)) throw InvalidArgument("approximate mode needs a positive tolerance");
  EvalMode m;
  m.kind = Kind::Approx;
  m.nodes = nodes;
  m.tolerance = tolerance;
  return m;
}

std::string_view node_name(NodeKind kind) {
  for (const auto& [k, name] : kNodeNames)
    if (k == kind) return name;
  throw InvalidArgument("unknown node kind");
}

NodeKind node_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kNodeNames)
    if (n == name) return k;
  throw InvalidArgument("unknown operator node '" + std::string(name) + "'");
}

OperatorSpec OperatorSpec::identity() { return OperatorSpec(NodeKind::Identity); }
OperatorSpec OperatorSpec::reflect() { return OperatorSpec(NodeKind::Reflect); }
OperatorSpec OperatorSpec::dbody() { return OperatorSpec(NodeKind::DBody); }
OperatorSpec OperatorSpec::center_steiner() { return OperatorSpec(NodeKind::CenterSteiner); }
OperatorSpec OperatorSpec::reflect_center_steiner() { return OperatorSpec(NodeKind::ReflectCenterSteiner); }
OperatorSpec OperatorSpec::steiner_point() { return OperatorSpec(NodeKind::SteinerPoint); }
OperatorSpec OperatorSpec::hull_sym_steiner() { return OperatorSpec(NodeKind::HullSymSteiner); }

OperatorSpec OperatorSpec::constant(Polytope body) {
  OperatorSpec op(NodeKind::Const);
  op.body_ = std::move(body);
  return op;
}

OperatorSpec OperatorSpec::linear(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("linear node needs a square matrix");
  OperatorSpec op(NodeKind::Linear);
  op.matrix_ = std::move(m);
  return op;
}

OperatorSpec OperatorSpec::vol_segment(Polytope segment) {
  require_segment(segment, "vol_segment");
  OperatorSpec op(NodeKind::VolSegment);
  op.body_ = std::move(segment);
  return op;
}

OperatorSpec OperatorSpec::dvol_segment(Polytope segment) {
  require_segment(segment, "dvol_segment");
  OperatorSpec op(NodeKind::DVolSegment);
  op.body_ = std::move(segment);
  return op;
}

OperatorSpec OperatorSpec::sum(std::vector<OperatorSpec> children) {
  if (children.empty()) throw InvalidArgument("sum node needs at least one child");
  OperatorSpec op(NodeKind::Sum);
  op.children_ = std::move(children);
  std::optional<int> d;
  for (const auto& c : op.children_) {
    const auto cd = c.fixed_dim();
    if (d && cd && *d != *cd) throw DimensionMismatch("sum node mixes payload dimensions");
    if (cd) d = cd;
  }
  return op;
}

OperatorSpec OperatorSpec::scaled(Rational factor, OperatorSpec child) {
  if (sgn(factor) < 0) throw InvalidArgument("scale node needs a nonnegative factor");
  OperatorSpec op(NodeKind::Scale);
  op.factor_ = std::move(factor);
  op.children_.push_back(std::move(child));
  return op;
}

bool OperatorSpec::is_exact() const {
  switch (kind_) {
    case NodeKind::CenterSteiner:
    case NodeKind::ReflectCenterSteiner:
    case NodeKind::SteinerPoint:
    case NodeKind::HullSymSteiner:
      return false;
    default:
      break;
  }
  for (const auto& c : children_)
    if (!c.is_exact()) return false;
  return true;
}

std::optional<int> OperatorSpec::fixed_dim() const {
  if (body_) return body_->ambient_dim();
  if (kind_ == NodeKind::Linear) return static_cast<int>(matrix_.rows());
  for (const auto& c : children_)
    if (auto d = c.fixed_dim()) return d;
  return std::nullopt;
}

EvalMode default_mode(const OperatorSpec& op) {
  return op.is_exact() ? EvalMode::exact() : EvalMode::approx();
}

Polytope dbody(const Polytope& k) { return minkowski_sum(k, reflect(k)); }

Polytope apply(const OperatorSpec& op, const Polytope& k, const EvalMode& mode) {
  switch (op.kind()) {
    case NodeKind::Identity:
      return k;
    case NodeKind::Reflect:
      return reflect(k);
    case NodeKind::DBody:
      return dbody(k);
    case NodeKind::Const:
      check_payload(*op.body(), k);
      return *op.body();
    case NodeKind::Linear:
      return linear_image(k, op.matrix());
    case NodeKind::VolSegment:
      check_payload(*op.body(), k);
      return scale(*op.body(), volume(k));
    case NodeKind::DVolSegment:
      check_payload(*op.body(), k);
      return scale(*op.body(), volume(dbody(k)));
    case NodeKind::CenterSteiner:
      return translate(k, -steiner_of(k, mode));
    case NodeKind::ReflectCenterSteiner:
      return translate(reflect(k), steiner_of(k, mode));
    case NodeKind::SteinerPoint:
      return point_body(steiner_of(k, mode));
    case NodeKind::HullSymSteiner: {
      const Polytope centered = translate(k, -steiner_of(k, mode));
      return hull_union(centered, reflect(centered));
    }
    case NodeKind::Sum: {
      Polytope acc = apply(op.children()[0], k, mode);
      for (std::size_t i = 1; i < op.children().size(); ++i)
        acc = minkowski_sum(acc, apply(op.children()[i], k, mode));
      return acc;
    }
    case NodeKind::Scale:
      return scale(apply(op.children()[0], k, mode), op.factor());
  }
  throw Error("apply: unreachable node kind");
}

RsReport rs_check(const Polytope& k) {
  const Rational v = volume(k);
  if (sgn(v) == 0) throw DegenerateInput("rs_check: body has zero volume");
  const auto n = static_cast<unsigned>(k.ambient_dim());
  RsReport r;
  r.ratio = volume(dbody(k)) / v;
  Integer lower;
  mpz_ui_pow_ui(lower.get_mpz_t(), 2, n);
  const Integer upper = binomial(2 * n, n);
  r.lower_tight = r.ratio == Rational(lower);
  r.upper_tight = r.ratio == Rational(upper);
  r.within_bounds = r.ratio >= Rational(lower) && r.ratio <= Rational(upper);
  return r;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{
      "dbody",          "cylinder",     "dbody_plus_steiner",  "cylinder_plus_steiner", "hull_sym",
      "cylinder_dvol",  "ab_reflect",   "cylinder_plus_dbody", "degenerate_cylinder",
  };
  return names;
}

OperatorSpec builtin(std::string_view name, int n, const BuiltinParams& params) {
  if (n < 1 || n > max_ambient_dim()) throw InvalidArgument("builtin: dimension out of range");
  const auto dim = static_cast<std::size_t>(n);
  auto default_l = [&] {
    if (n == 1) return point_body(RPoint(dim));
    std::vector<SegmentSpec> gens;
    for (std::size_t i = 0; i + 1 < dim; ++i) gens.emplace_back(RPoint::unit(dim, i));
    return zonotope(gens);
  };
  const bool degenerate = name == "degenerate_cylinder";
  const Polytope l = params.L.value_or(default_l());
  const Polytope s = params.S.value_or(segment(RPoint::unit(dim, degenerate ? 0 : dim - 1)));
  if (l.ambient_dim() != n || s.ambient_dim() != n)
    throw DimensionMismatch("builtin: parameter bodies must live in R^" + std::to_string(n));

  const bool uses_cylinder = name.starts_with("cylinder") || degenerate;
  if (uses_cylinder) {
    if (affine_dim(l) != n - 1) throw InvalidArgument("builtin: L must have dimension n-1");
    if (affine_dim(s) != 1) throw InvalidArgument("builtin: S must be a segment");
    const int joint = affine_dim(minkowski_sum(l, s));
    if (degenerate && joint >= n) throw InvalidArgument("degenerate_cylinder needs dim(L+S) < n");
    if (!degenerate && joint != n) throw InvalidArgument("builtin: cylinder needs dim(L+S) = n");
    if (degenerate && reflect(l) != l) throw InvalidArgument("degenerate_cylinder needs symmetric L");
  }

  OperatorSpec op = OperatorSpec::identity();
  if (name == "dbody") {
    op = OperatorSpec::dbody();
  } else if (name == "cylinder" || degenerate) {
    op = OperatorSpec::sum({OperatorSpec::constant(l), OperatorSpec::vol_segment(s)});
  } else if (name == "dbody_plus_steiner") {
    op = OperatorSpec::sum({OperatorSpec::dbody(), OperatorSpec::steiner_point()});
  } else if (name == "cylinder_plus_steiner") {
    op = OperatorSpec::sum(
        {OperatorSpec::constant(l), OperatorSpec::vol_segment(s), OperatorSpec::steiner_point()});
  } else if (name == "hull_sym") {
    op = OperatorSpec::hull_sym_steiner();
  } else if (name == "cylinder_dvol") {
    op = OperatorSpec::sum({OperatorSpec::constant(l), OperatorSpec::dvol_segment(s)});
  } else if (name == "ab_reflect") {
    const Rational a = params.a.value_or(2);
    const Rational b = params.b.value_or(1);
    op = OperatorSpec::sum({OperatorSpec::scaled(a, OperatorSpec::center_steiner()),
                            OperatorSpec::scaled(b, OperatorSpec::reflect_center_steiner())});
  } else if (name == "cylinder_plus_dbody") {
    op = OperatorSpec::sum(
        {OperatorSpec::constant(l), OperatorSpec::vol_segment(s), OperatorSpec::dbody()});
  } else {
    throw InvalidArgument("unknown builtin operator '" + std::string(name) + "'");
  }
  op.with_name(std::string(name));
  return op;
}

}  // namespace minkval
