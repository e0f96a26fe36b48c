#pragma once

#include <string>

#include "zpath/membership.hpp"
#include "zpath/path.hpp"
#include "zpath/zero_set.hpp"

namespace zpath {

// Epsilon budgets above this violate the standing smallness assumption
// behind the exponential path construction.
inline double epsilon_limit() { return 4.0 * std::sin(0.125); }

// Named bound comparison carried into certificates: measured vs claimed.
struct BoundCheck {
  std::string name;
  double claimed = 0.0;
  double measured = 0.0;
  bool pass = false;
};

struct PathResult {
  MatrixPath path;
  std::vector<BoundCheck> diagnostics;
};

// Unitary carrying the joint spectrum of X onto that of Y, both snapped to
// the zero set.  Rows must match as multisets of zero-set points.
CMatrix isospectral_match(const MatrixTuple& x, const MatrixTuple& y,
                          const ZeroSet& z, const ToleranceConfig& tol = {});

// Input-distance budget for the exponential path at accuracy epsilon.
struct DeltaBudget {
  double h_p = 0.0;
  double k_m = 1.0;
  long long k_prod = 1;  // product of coordinate-annihilator degrees
  int l_max = 1;         // max coordinate-annihilator degree
  double delta = 0.0;
  bool degenerate = false;  // all coordinates single-valued
};

DeltaBudget delta_budget(const ZeroSet& z, double epsilon, int m,
                         double k_m = 1.0);

// One conjugation segment t -> exp((1-t)K) Y exp(-(1-t)K) moving X to Y
// through the matching unitary corrected to commute with Y.
PathResult homomorphism_path(const MatrixTuple& x, const MatrixTuple& y,
                             const ZeroSet& z, double epsilon,
                             const ToleranceConfig& tol = {});

// Certified-constructor entry points for members of the algebraic cube/disk.
PathResult connect_cube(const MatrixTuple& x, const MatrixTuple& y,
                        const MultiPolySystem& system, const ZeroSet& z,
                        double epsilon, double k_m = 1.0,
                        const ToleranceConfig& tol = {});

PathResult connect_disk(const MatrixTuple& x, const MatrixTuple& y,
                        const MultiPolySystem& system, const ZeroSet& z,
                        double epsilon, double k_m = 1.0,
                        const ToleranceConfig& tol = {});

// Functional-calculus retraction onto the zero set: every joint-eigenvalue
// row is replaced by its nearest zero-set point (must be within gap/2).
MatrixTuple round_to_zero_set(const MatrixTuple& x, const ZeroSet& z,
                              const ToleranceConfig& tol = {});

// Near-members are first retracted onto the zero set, connected there, and
// the retractions prepended/appended as flat segments.
PathResult connect_nearly_algebraic(const MatrixTuple& x, const MatrixTuple& y,
                                    const MultiPolySystem& system,
                                    const ZeroSet& z, double epsilon,
                                    SetFamily family, double k_m = 1.0,
                                    const ToleranceConfig& tol = {});

}  // namespace zpath
