#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minkval/linalg.hpp"
#include "minkval/polytope.hpp"

namespace minkval {

/// Evaluation layer. Exact mode is pure rational arithmetic; approximate mode
/// admits Steiner-point nodes, whose values come from sphere quadrature with
/// `nodes` points and are compared up to `tolerance`.
struct EvalMode {
  enum class Kind { Exact, Approx };
  Kind kind = Kind::Exact;
  std::size_t nodes = 2048;
  double tolerance = 1e-6;

  static EvalMode exact() { return {}; }
  /// Throws InvalidArgument unless nodes >= 32 and tolerance > 0.
  static EvalMode approx(std::size_t nodes = 2048, double tolerance = 1e-6);
  bool is_exact() const { return kind == Kind::Exact; }
};

enum class NodeKind {
  Identity,              // K
  Reflect,               // -K
  DBody,                 // K + (-K)
  Const,                 // fixed body B
  Linear,                // M K
  VolSegment,            // V_n(K) S
  DVolSegment,           // V_n(DK) S
  CenterSteiner,         // K - s(K)
  ReflectCenterSteiner,  // -K + s(K), i.e. Reflect applied after CenterSteiner
  SteinerPoint,          // {s(K)}
  HullSymSteiner,        // conv((K - s(K)) ∪ (-K + s(K)))
  Sum,                   // Minkowski sum of the children
  Scale,                 // factor * child
};

std::string_view node_name(NodeKind kind);
NodeKind node_kind_from_name(std::string_view name);

/// Operator K -> Phi(K) described as data. Trees are built through the
/// factory functions, which enforce the node invariants.
class OperatorSpec {
 public:
  static OperatorSpec identity();
  static OperatorSpec reflect();
  static OperatorSpec dbody();
  static OperatorSpec constant(Polytope body);
  static OperatorSpec linear(Matrix m);
  static OperatorSpec vol_segment(Polytope segment);
  static OperatorSpec dvol_segment(Polytope segment);
  static OperatorSpec center_steiner();
  static OperatorSpec reflect_center_steiner();
  static OperatorSpec steiner_point();
  static OperatorSpec hull_sym_steiner();
  static OperatorSpec sum(std::vector<OperatorSpec> children);
  static OperatorSpec scaled(Rational factor, OperatorSpec child);

  NodeKind kind() const { return kind_; }
  const std::optional<Polytope>& body() const { return body_; }
  const Matrix& matrix() const { return matrix_; }
  const Rational& factor() const { return factor_; }
  const std::vector<OperatorSpec>& children() const { return children_; }

  /// Catalog name when built by `builtin`, empty otherwise.
  const std::string& name() const { return name_; }
  OperatorSpec& with_name(std::string name) {
    name_ = std::move(name);
    return *this;
  }

  /// True iff no node in the tree depends on the Steiner point.
  bool is_exact() const;
  /// Ambient dimension fixed by Const/Linear/segment payloads, if any.
  std::optional<int> fixed_dim() const;

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;

 private:
  explicit OperatorSpec(NodeKind k) : kind_(k) {}

  NodeKind kind_;
  std::optional<Polytope> body_;
  Matrix matrix_;
  Rational factor_ = 1;
  std::vector<OperatorSpec> children_;
  std::string name_;
};

/// Exact mode for exact trees, default approximate mode otherwise.
EvalMode default_mode(const OperatorSpec& op);

/// Structural evaluation of op on k. Throws ExactModeViolation for Steiner
/// nodes in exact mode and DimensionMismatch for incompatible payloads.
Polytope apply(const OperatorSpec& op, const Polytope& k, const EvalMode& mode);
inline Polytope apply(const OperatorSpec& op, const Polytope& k) { return apply(op, k, default_mode(op)); }

/// DK = K + (-K).
Polytope dbody(const Polytope& k);

struct RsReport {
  Rational ratio;
  bool within_bounds;
  bool lower_tight;  // ratio == 2^n
  bool upper_tight;  // ratio == C(2n, n)
};

/// V_n(DK) / V_n(K) against 2^n <= ratio <= C(2n, n). Throws DegenerateInput
/// for zero-volume bodies.
RsReport rs_check(const Polytope& k);

/// Parameters of the catalog operators. Missing bodies default to
/// L = [-1,1]^{n-1} x {0} and S = S_{e_n} (degenerate_cylinder: S = S_{e_1}).
struct BuiltinParams {
  std::optional<Polytope> L;
  std::optional<Polytope> S;
  std::optional<Rational> a;  // ab_reflect, default 2
  std::optional<Rational> b;  // ab_reflect, default 1
};

/// Names accepted by `builtin`.
const std::vector<std::string>& builtin_names();

/// Catalog operator in R^n. Throws InvalidArgument for unknown names or
/// parameters violating the catalog entry's requirements.
OperatorSpec builtin(std::string_view name, int n, const BuiltinParams& params = {});

}  // namespace minkval
