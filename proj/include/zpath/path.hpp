#pragma once

#include <variant>

#include "zpath/tuple.hpp"

namespace zpath {

// Straight-line interpolation between cross-commuting tuples.
struct LinearSegment {
  MatrixTuple start;
  MatrixTuple end;
};

// t -> exp(s(t) K) base exp(-s(t) K) with s(t) = a + (b - a) t.  The
// eigendecomposition of -iK is cached so sampling needs no fresh eigensolve.
struct ConjugationSegment {
  MatrixTuple base;
  CMatrix k;
  double a = 0.0;
  double b = 1.0;
  CMatrix qk;
  std::vector<double> theta;
};

ConjugationSegment make_conjugation(MatrixTuple base, CMatrix k, double a,
                                    double b, const ToleranceConfig& tol = {});
// Same exponent data, new tuple being conjugated.
ConjugationSegment retarget_conjugation(const ConjugationSegment& seg,
                                        MatrixTuple new_base);

using PathSegment = std::variant<LinearSegment, ConjugationSegment>;

MatrixTuple segment_sample(const PathSegment& seg, double u);

// Piecewise path on [0, 1]; parameter is split uniformly across segments, so
// junctions sit at k / segment_count.
class MatrixPath {
 public:
  explicit MatrixPath(std::vector<PathSegment> segments);

  const std::vector<PathSegment>& segments() const { return segments_; }
  size_t segment_count() const { return segments_.size(); }
  int n() const { return n_; }
  int m() const { return m_; }

  MatrixTuple sample(double t) const;

 private:
  std::vector<PathSegment> segments_;
  int n_ = 0;
  int m_ = 0;
};

// Single linear segment; requires all cross commutators within tol_commute.
MatrixPath flat_path(const MatrixTuple& x, const MatrixTuple& y,
                     const ToleranceConfig& tol = {});

// Joins two paths end-to-start; junction mismatch beyond tol_recon is a
// DiscontinuousJoin error.
MatrixPath concat(const MatrixPath& a, const MatrixPath& b,
                  const ToleranceConfig& tol = {});

}  // namespace zpath
