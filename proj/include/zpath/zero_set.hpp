#pragma once

#include "zpath/poly.hpp"

namespace zpath {

// Finite common zero set of a polynomial system.  Zero sets are validated
// inputs: the library never solves for them.
struct ZeroSet {
  int vars = 0;
  std::vector<std::vector<cplx>> points;
  double gap = 0.0;     // min pairwise Euclidean distance, set by validation
  double delta1 = 0.0;  // gap / 3
};

// Checks arity, distinctness, and that every point annihilates every
// polynomial within tol_member.  Returns the set with gap and delta1 filled.
ZeroSet validate_zero_set(const std::vector<std::vector<cplx>>& points,
                          const MultiPolySystem& system,
                          const ToleranceConfig& tol = {});

// Index of the nearest point and its distance.
std::pair<int, double> nearest_zero(const ZeroSet& z,
                                    const std::vector<cplx>& row);

}  // namespace zpath
