#pragma once

#include <cstdint>
#include <vector>

#include "zpath/tuple.hpp"

namespace zpath {

inline constexpr uint64_t kDefaultJointSeed = 0x5eed0000c0ffeeull;

// Simultaneous diagonalization of a commuting normal tuple:
// X_j = Q diag(lambda[.][j]) Q*.  Rows of lambda are the joint eigenvalues,
// ordered lexicographically by (Re l_1, Im l_1, Re l_2, ...).
struct JointSpectrum {
  CMatrix q;
  std::vector<std::vector<cplx>> lambda;     // n rows, m entries each
  std::vector<double> recon_residual;        // per component, Frobenius
};

// Diagonalizes a seeded random hermitian combination of the components'
// hermitian and anti-hermitian parts, then refines degenerate eigenspaces
// against each part in turn.
JointSpectrum joint_diagonalize(const MatrixTuple& x,
                                const ToleranceConfig& tol = {},
                                uint64_t seed = kDefaultJointSeed);

// Orthogonal projector onto the span of the selected joint-eigenvalue rows.
CMatrix joint_spectral_projector(const JointSpectrum& s,
                                 const std::vector<int>& rows);

}  // namespace zpath
