#pragma once

#include <vector>

#include "zpath/cmatrix.hpp"

namespace zpath {

// Eigendecomposition of a hermitian matrix: H = Q diag(values) Q*,
// values ascending, Q unitary with columns in matching order.
struct EigenDecomposition {
  std::vector<double> values;
  CMatrix q;
};

// Cyclic Jacobi with complex plane rotations.  Sweeps until the off-diagonal
// Frobenius mass drops below 1e-13 * ||H||_F (at most 60 sweeps).  The input
// is symmetrized before iterating; the hermiticity gate is measured in the
// Frobenius norm.
EigenDecomposition hermitian_eigen(const CMatrix& h,
                                   const ToleranceConfig& tol = {});

}  // namespace zpath
