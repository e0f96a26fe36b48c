#pragma once

#include <functional>
#include <vector>

#include "zpath/eigen.hpp"

namespace zpath {

// Largest singular value, computed as sqrt of the top eigenvalue of A*A.
double operator_norm(const CMatrix& a, const ToleranceConfig& tol = {});

// Power-iteration estimate of the operator norm with a deterministic start
// vector.  Used by the certification hot path; agreement with operator_norm
// is covered by tests.  `warm` optionally carries the iterate between calls
// on slowly varying matrices.
double est_operator_norm(const CMatrix& a, std::vector<cplx>* warm = nullptr);

// Same estimator for an operator given only through y = A x and y = A* x
// callbacks, so products like commutators or polynomial values can be
// measured without ever forming them.
using LinOpFn = std::function<void(const cplx* x, cplx* y)>;
double est_linop_norm(int n, const LinOpFn& apply, const LinOpFn& apply_adjoint,
                      std::vector<cplx>* warm = nullptr);

struct PolarResult {
  CMatrix v;  // unitary factor
  CMatrix r;  // positive semidefinite factor, A = V R
};

// Polar decomposition through the eigendecomposition of A*A.  For singular A
// the unitary factor is completed deterministically by Gram-Schmidt over the
// standard basis in index order.
PolarResult polar_decompose(const CMatrix& a, const ToleranceConfig& tol = {});

// sum_j P_j W P_j over a family of orthogonal projectors.
CMatrix full_pinching(const CMatrix& w, const std::vector<CMatrix>& projectors);

// exp(t K) for skew-hermitian K, through the eigendecomposition of -iK.
CMatrix unitary_exp(const CMatrix& k, double t, const ToleranceConfig& tol = {});

// Principal logarithm of a unitary: K skew-hermitian with exp(K) = W and
// spectrum of -iK in (-pi, pi].  Rejects spectrum within tol_cluster of -1
// unless allow_branch_edge is set.  Satisfies ||K|| <= (pi/2) ||1 - W||.
CMatrix principal_skew_log(const CMatrix& w, const ToleranceConfig& tol = {},
                           bool allow_branch_edge = false);

}  // namespace zpath
