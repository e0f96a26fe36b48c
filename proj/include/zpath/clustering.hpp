#pragma once

#include "zpath/joint_spectrum.hpp"
#include "zpath/poly.hpp"

namespace zpath {

// Uniform midpoint grid over [-1, 1]: ceil(2/delta) cells, so every point of
// the interval is within cell_width/2 <= delta/2 of a midpoint.
struct Grid {
  double delta = 0.0;       // requested spacing
  double cell_width = 0.0;  // 2 / cells
  int cells = 0;
  std::vector<double> midpoints;
};

Grid build_grid(double delta);

// Nearest midpoint for x clamped to [-1, 1]; the last cell is closed.
double quantize_scalar(const Grid& grid, double x);

struct CpaResult {
  MatrixTuple approximant;
  double delta_used = 0.0;
  double achieved_distance = 0.0;
  std::vector<MultiPoly> minimal_polys;  // univariate annihilator per component
  int max_degree = 0;
  std::vector<std::vector<cplx>> quantized_rows;
};

// Commuting piecewise-constant approximant of a commuting hermitian tuple:
// quantizes the joint eigenvalues through one shared diagonalizer, which
// keeps commutation structural and caps minimal-polynomial degrees at
// ceil(2/delta) independent of n.
CpaResult cpa_hermitian(const MatrixTuple& x, double delta,
                        const ToleranceConfig& tol = {});

// Normal variant: quantizes real and imaginary parts at delta/2 and clamps
// any quantized eigenvalue outside the closed unit disk back to modulus 1.
CpaResult cpa_normal(const MatrixTuple& x, double delta,
                     const ToleranceConfig& tol = {});

// Snaps every joint eigenvalue of a commuting hermitian tuple to the nearest
// value in `targets` (ties resolve to the smaller value).
MatrixTuple retract_to_grid(const MatrixTuple& x,
                            const std::vector<double>& targets,
                            const ToleranceConfig& tol = {});

}  // namespace zpath
