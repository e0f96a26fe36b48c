#pragma once

#include "zpath/opu.hpp"

namespace zpath {

// Result of replacing an approximately intertwining unitary W by a nearby
// correction Z that commutes with the reference family exactly (up to the
// reported commutator).  achieved = ||1 - W Z||; the a-priori bound is
// achieved <= bound_constant * residual, checked with a 1e-9 slack.
struct CorrectionResult {
  CMatrix z;
  double residual = 0.0;        // max_k ||W D_k W* - D_k||
  double achieved = 0.0;        // ||1 - W Z||
  double bound_constant = 0.0;  // 0 when the reference family is scalar
  double z_commutator = 0.0;    // max_k ||[Z, D_k]||
  bool bound_holds = false;
};

// Single reference matrix D = sum_j alpha_j P_j with the labelled OPU given.
// Z is the adjoint of the blockwise unitary polar factor of the pinch of W;
// bound_constant = 3 r (r - 1) / s with s the minimal label gap.
CorrectionResult commuting_correction(const CMatrix& w, const CMatrix& d,
                                      const OPU& opu,
                                      const ToleranceConfig& tol = {});

// Reference m-tuple pinched against a refined OPU (typically the projective
// refinement of the per-component spectral OPUs).  bound_constant =
// 2 sqrt(2) m N max_k 3 r_k (r_k - 1) / s_k.
CorrectionResult refined_commuting_correction(const CMatrix& w,
                                              const MatrixTuple& d,
                                              const OPU& refined,
                                              const ToleranceConfig& tol = {});

}  // namespace zpath
