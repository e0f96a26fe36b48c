#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace zpath {

using cplx = std::complex<double>;

// Tolerance knobs shared across the library.  Every certified quantity is
// gated against one of these; certificates embed the full set so runs can be
// reproduced bit for bit.
struct ToleranceConfig {
  double tol_unitary = 1e-10;  // unitarity defect gates
  double tol_recon   = 1e-10;  // reconstruction / junction gates
  double tol_commute = 1e-9;   // commutator gates
  double tol_member  = 1e-8;   // membership residual gates
  double tol_cluster = 1e-6;   // eigenvalue clustering radius
};

enum class ErrorCode {
  NonFinite,
  ShapeMismatch,
  NotHermitian,
  NotUnitary,
  NotSkewHermitian,
  NotNormal,
  NotCommuting,
  NotCrossCommuting,
  BranchEdge,
  OddComponentCount,
  NotAZero,
  DuplicatePoint,
  EmptyZeroSet,
  ClusterOverlap,
  InvalidOPU,
  NotCommutingOPUs,
  IndexOutOfRange,
  BadDelta,
  NotMember,
  NotNearlyMember,
  EpsilonTooLarge,
  DeltaTooLarge,
  SpectraOffZeroSet,
  NoNearbyZero,
  DiscontinuousJoin,
  BadParameter,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace zpath
