#pragma once

#include <cstdint>
#include <string>

#include "zpath/clustering.hpp"
#include "zpath/connect.hpp"

namespace zpath {

struct CertifyConfig {
  int samples = 129;           // minimum; rounded up so junctions land on the grid
  double poly_gate = 0.0;      // 0 selects tol_member
  double endpoint_gate = 1e-9;
  uint64_t seed = 0;           // reserved; estimator starts are deterministic
};

// A-posteriori certificate: the path is sampled on a uniform grid aligned
// with segment junctions and every gate below is measured, never derived.
// Conjugation segments are measured in the eigenbasis of their exponent,
// where unitary invariance makes the sampled matrices cheap to form; the
// frame itself is spot-checked against literal samples (frame_defect).
struct PathCertificate {
  bool pass = false;
  int samples = 0;
  double epsilon = 0.0;
  double poly_gate = 0.0;
  SetFamily family = SetFamily::Cube;

  double endpoint_residual_start = 0.0;  // d(sample(0), X)
  double endpoint_residual_end = 0.0;    // d(sample(1), Y)
  double max_ball_distance = 0.0;        // max_t d(sample(t), Y)
  double max_ball_excess = 0.0;          // max(0, max_ball_distance - epsilon)
  double max_poly_residual = 0.0;
  double max_commutator = 0.0;
  double max_normality = 0.0;            // cube: hermiticity defect; disk: [M, M*]
  double max_contraction_excess = 0.0;   // max(0, ||M_j|| - 1)
  double frame_defect = 0.0;             // literal sample vs measurement frame

  std::vector<BoundCheck> checks;        // informational except frame_consistency
  ToleranceConfig tolerances;
  uint64_t seed = 0;
};

// The system pointer may be null (unconstrained cube/disk).  Construction
// diagnostics, when given, are copied into the certificate's check list.
PathCertificate certify_path(const MatrixPath& path, const MatrixTuple& x,
                             const MatrixTuple& y,
                             const MultiPolySystem* system, double epsilon,
                             SetFamily family, const CertifyConfig& cfg = {},
                             const ToleranceConfig& tol = {},
                             const std::vector<BoundCheck>* diagnostics = nullptr);

// One row per dimension of the size-independence sweep: seeded member,
// fixed-magnitude conjugation perturbation, connect, certify, margins.
struct SweepRow {
  int n = 0;
  double delta_used = 0.0;       // perturbation magnitude driving d(X, Y)
  bool success = false;
  std::string failure;           // error name when construction throws
  double input_distance = 0.0;   // measured d(X, Y)
  double margin_ball = 0.0;      // epsilon - max_ball_distance
  double margin_poly = 0.0;
  double margin_commutator = 0.0;
  double margin_endpoint = 0.0;
  double k_norm = 0.0;           // exponent norm of the conjugation path
  double margin_k_eps4 = 0.0;    // 2 arcsin(eps/4) + tol_recon - k_norm
  double margin_k_eps2 = 0.0;
  int cpa_max_degree = 0;        // parallel clustering run at cpa_delta
  double cpa_distance = 0.0;
};

struct SweepReport {
  double epsilon = 0.0;
  double perturbation = 0.0;
  double cpa_delta = 0.0;
  uint64_t seed = 0;
  std::vector<SweepRow> rows;
};

// perturbation == 0 selects the informational delta_budget value.  The
// family is inferred from the zero set: real points drive the cube, points
// with imaginary parts drive the disk.
SweepReport uniformity_sweep(const MultiPolySystem& system, const ZeroSet& z,
                             double epsilon, const std::vector<int>& dims,
                             uint64_t seed, double perturbation,
                             double cpa_delta, const ToleranceConfig& tol = {});

}  // namespace zpath
