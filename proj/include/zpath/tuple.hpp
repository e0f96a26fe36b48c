#pragma once

#include <vector>

#include "zpath/cmatrix.hpp"

namespace zpath {

// An m-tuple of n x n matrices.  Components are expected to be pairwise
// commuting normal contractions; the various checks gate this explicitly.
using MatrixTuple = std::vector<CMatrix>;

// All components square, same size, finite.  Returns n.
int tuple_size(const MatrixTuple& x, const char* where);

// Max over components of the operator-norm distance.
double metric(const MatrixTuple& x, const MatrixTuple& y,
              const ToleranceConfig& tol = {});

// Power-iteration variant used on hot paths.
double metric_est(const MatrixTuple& x, const MatrixTuple& y);

// Splits an m-tuple into the 2m-tuple of hermitian parts, laid out as
// (Re X_1, ..., Re X_m, Im X_1, ..., Im X_m).  Contractive for the metric.
MatrixTuple partition(const MatrixTuple& x);

// Inverse of partition: X_j = S_j + i S_{m+j}.  At most doubles the metric.
MatrixTuple juncture(const MatrixTuple& s);

}  // namespace zpath
