#pragma once

#include "zpath/poly.hpp"

namespace zpath {

enum class SetFamily { Cube, Disk };

// Residual summary for membership of a tuple in the (algebraic) matrix cube
// or disk.  All norms are operator norms.
struct MembershipReport {
  bool in_set = false;
  double worst_commutator = 0.0;   // max ||[X_j, X_k]||, j < k
  double worst_normality = 0.0;    // cube: max ||X_j - X_j*||; disk: max ||[X_j, X_j*]||
  double worst_contraction = 0.0;  // max(0, max_j ||X_j|| - 1)
  std::vector<double> poly_residuals;
  double worst_poly = 0.0;
  double poly_gate = 0.0;          // residual gate applied (epsilon, or tol_member)
};

// epsilon == 0 requests exact membership (polynomial residuals gated at
// tol_member); epsilon > 0 gates them at epsilon instead.  The system pointer
// may be null for the unconstrained cube/disk.
MembershipReport check_membership(const MatrixTuple& x, SetFamily family,
                                  const MultiPolySystem* system, double epsilon,
                                  const ToleranceConfig& tol = {});

}  // namespace zpath
