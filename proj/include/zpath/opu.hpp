#pragma once

#include "zpath/joint_spectrum.hpp"
#include "zpath/linalg.hpp"

namespace zpath {

// Orthogonal projective unit: pairwise-orthogonal hermitian projectors that
// sum to the identity.  Labels, when present, carry the cluster centroid of
// the joint eigenvalues behind each projector.
struct OPU {
  std::vector<CMatrix> projectors;
  std::vector<std::vector<cplx>> labels;  // empty, or one point per projector
};

// Structural checks: hermitian, idempotent, pairwise orthogonal, summing to
// the identity, all within Frobenius gates derived from tol.
void validate_opu(const OPU& p, const ToleranceConfig& tol = {});

// Clusters joint-eigenvalue rows by single linkage at cluster_tol and emits
// one spectral projector per cluster.  Rejects clusterings whose centroids
// come closer than twice the radius.
OPU opu_from_spectrum(const JointSpectrum& s, double cluster_tol,
                      const ToleranceConfig& tol = {});

// Nonzero products across a family of commuting OPUs; factors with norm at
// most 1/2 are treated as zero, survivors are rounded back to projectors by
// spectral calculus.
OPU projective_refinement(const std::vector<OPU>& parts,
                          const ToleranceConfig& tol = {});

// Per-projector polar data of the pinch P_j X P_j: block unitary V_j with
// V_j V_j* = P_j and positive semidefinite R_j supported on ran P_j.
std::vector<PolarResult> projective_polar(const OPU& p, const CMatrix& x,
                                          const ToleranceConfig& tol = {});

}  // namespace zpath
