#include "zpath/membership.hpp"

#include <cmath>

#include "zpath/linalg.hpp"

namespace zpath {

MembershipReport check_membership(const MatrixTuple& x, SetFamily family,
                                  const MultiPolySystem* system, double epsilon,
                                  const ToleranceConfig& tol) {
  tuple_size(x, "check_membership");
  if (epsilon < 0.0 || !std::isfinite(epsilon))
    throw Error(ErrorCode::BadParameter, "check_membership: bad epsilon");
  const size_t m = x.size();
  if (system && static_cast<size_t>(system->vars) != m)
    throw Error(ErrorCode::ShapeMismatch, "check_membership: system arity");

  MembershipReport rep;
  for (size_t j = 0; j < m; ++j) {
    const CMatrix adj = x[j].adjoint();
    if (family == SetFamily::Cube) {
      rep.worst_normality =
          std::max(rep.worst_normality, est_operator_norm(x[j] - adj));
    } else {
      rep.worst_normality = std::max(
          rep.worst_normality, est_operator_norm(mul(x[j], adj) - mul(adj, x[j])));
    }
    rep.worst_contraction =
        std::max(rep.worst_contraction, est_operator_norm(x[j]) - 1.0);
    for (size_t k = j + 1; k < m; ++k)
      rep.worst_commutator =
          std::max(rep.worst_commutator, est_operator_norm(commutator(x[j], x[k])));
  }
  rep.worst_contraction = std::max(rep.worst_contraction, 0.0);

  rep.poly_gate = epsilon > 0.0 ? epsilon : tol.tol_member;
  if (system) {
    for (const MultiPoly& p : system->polys) {
      const double res = est_operator_norm(eval_poly(p, x));
      rep.poly_residuals.push_back(res);
      rep.worst_poly = std::max(rep.worst_poly, res);
    }
  }

  rep.in_set = rep.worst_commutator <= tol.tol_commute &&
               rep.worst_normality <= tol.tol_member &&
               rep.worst_contraction <= tol.tol_member &&
               rep.worst_poly <= rep.poly_gate;
  return rep;
}

}  // namespace zpath
