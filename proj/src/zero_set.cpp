#include "zpath/zero_set.hpp"

#include <cmath>
#include <limits>

namespace zpath {

namespace {

double point_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += std::norm(a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

ZeroSet validate_zero_set(const std::vector<std::vector<cplx>>& points,
                          const MultiPolySystem& system,
                          const ToleranceConfig& tol) {
  if (points.empty())
    throw Error(ErrorCode::EmptyZeroSet, "validate_zero_set: empty point list");

  ZeroSet z;
  z.vars = system.vars;
  for (const auto& pt : points) {
    if (static_cast<int>(pt.size()) != system.vars)
      throw Error(ErrorCode::ShapeMismatch, "validate_zero_set: arity mismatch");
    for (const cplx& v : pt)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorCode::NonFinite, "validate_zero_set: non-finite point");
    for (const MultiPoly& p : system.polys)
      if (std::abs(p.eval(pt)) > tol.tol_member)
        throw Error(ErrorCode::NotAZero,
                    "validate_zero_set: point does not annihilate the system");
  }

  double gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      const double d = point_distance(points[i], points[j]);
      if (d <= tol.tol_cluster)
        throw Error(ErrorCode::DuplicatePoint,
                    "validate_zero_set: points coincide");
      gap = std::min(gap, d);
    }
  z.points = points;
  z.gap = points.size() > 1 ? gap : std::numeric_limits<double>::infinity();
  z.delta1 = z.gap / 3.0;
  return z;
}

std::pair<int, double> nearest_zero(const ZeroSet& z,
                                    const std::vector<cplx>& row) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < z.points.size(); ++i) {
    const double d = point_distance(z.points[i], row);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return {best, best_d};
}

}  // namespace zpath
