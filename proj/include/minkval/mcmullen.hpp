#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "minkval/operators.hpp"
#include "minkval/report.hpp"

namespace minkval {

/// h(Phi(K), u) = sum_j f_j(K, u), f_j homogeneous of degree j in K.
struct McMullenRecord {
  OperatorSpec op;
  Polytope body;
  RPoint direction;
  std::vector<Rational> components;  // f_0 .. f_n
  bool validated = false;
  Rational residual;  // at the held-out node
  bool approx = false;
  double tolerance = 0;
};

/// Fits g(lambda) = h(Phi(lambda K), u) at lambda = 1..n+1 and validates at
/// lambda = n+2. Throws DegreeExceeded when the held-out residual is nonzero
/// (exact mode) or above the tolerance (approximate mode).
McMullenRecord decompose_scalar(const OperatorSpec& op, const Polytope& k, const Direction& u,
                                const EvalMode& mode);
inline McMullenRecord decompose_scalar(const OperatorSpec& op, const Polytope& k, const Direction& u) {
  return decompose_scalar(op, k, u, default_mode(op));
}

/// One record per direction; the scaled images are computed once.
std::vector<McMullenRecord> decompose(const OperatorSpec& op, const Polytope& k, std::span<const RPoint> dirs,
                                      const EvalMode& mode);

/// f_0(K, u) equal across bodies and to h(Phi({p}), u). For operators that are
/// not translation invariant the translation witness is reported instead.
CheckResult f0_constancy(const OperatorSpec& op, std::span<const Polytope> bodies, std::span<const RPoint> dirs,
                         const EvalMode& mode);

struct FnReport {
  CheckResult check;
  std::vector<Rational> ratios;  // f_n(K, u) / V(K) per direction, from the first body
};

/// f_n(K, u) / V_n(K) independent of K. Throws DegenerateInput on
/// zero-volume bodies.
FnReport fn_volume_proportionality(const OperatorSpec& op, std::span<const Polytope> bodies,
                                   std::span<const RPoint> dirs, const EvalMode& mode);

/// f_j vanishes on bodies of dimension < j and is sublinear in u on bodies
/// of dimension j (sampled over all pairs of `dirs`).
CheckResult component_facts_check(const OperatorSpec& op, int j, std::span<const Polytope> corpus,
                              std::span<const RPoint> dirs, const EvalMode& mode);

/// Sampled subadditivity of every u -> f_j(Z, u) on a zonotope.
CheckResult zonoid_support_probe(const OperatorSpec& op, const Polytope& z,
                                 std::span<const std::pair<RPoint, RPoint>> dir_pairs, const EvalMode& mode);

/// f_k(S_1 + ... + S_n, u) = sum over k-subsets sigma of f_k(S_sigma1 + ... + S_sigmak, u).
CheckResult polarization_check(const OperatorSpec& op, std::span<const Polytope> segments, int k,
                               std::span<const RPoint> dirs, const EvalMode& mode);

struct VolumePolyRecord {
  OperatorSpec op;
  Polytope body;
  std::vector<Rational> coeffs;  // v_0 .. v_D
  bool validated = false;
  bool degree_raised = false;  // n^2 failed validation and n^n was used
  Rational residual;
};

/// Fits V_n(Phi(lambda K)) as a polynomial of degree n^2 (nodes 1..n^2+1,
/// validation at n^2+2). On a failed validation the degree is raised to n^n
/// when n <= 3; DegreeExceeded otherwise.
VolumePolyRecord volume_poly(const OperatorSpec& op, const Polytope& k, const EvalMode& mode);
inline VolumePolyRecord volume_poly(const OperatorSpec& op, const Polytope& k) {
  return volume_poly(op, k, default_mode(op));
}

/// Full-dimensional K: only v_n nonzero. Lower-dimensional K: all zero.
CheckResult monomial_check(const OperatorSpec& op, std::span<const Polytope> corpus, const EvalMode& mode);

/// Affine dimension of Phi({p}) at three distinct points; ModelViolation if
/// they disagree.
int dichotomy_data(const OperatorSpec& op, int n, const EvalMode& mode);
inline int dichotomy_data(const OperatorSpec& op, int n) { return dichotomy_data(op, n, default_mode(op)); }

/// f_j(K, u) = f_j(K, -u). Throws PreconditionViolation unless every image
/// is o-symmetric.
CheckResult even_check(const OperatorSpec& op, std::span<const Polytope> corpus, std::span<const RPoint> dirs,
                       const EvalMode& mode);

}  // namespace minkval
