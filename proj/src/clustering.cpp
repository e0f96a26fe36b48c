#include "zpath/clustering.hpp"

#include <algorithm>
#include <cmath>

#include "zpath/linalg.hpp"

namespace zpath {

Grid build_grid(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(ErrorCode::BadDelta, "build_grid: delta must be positive");
  Grid g;
  g.delta = delta;
  g.cells = std::max(1, static_cast<int>(std::ceil(2.0 / delta)));
  g.cell_width = 2.0 / g.cells;
  g.midpoints.resize(g.cells);
  for (int k = 0; k < g.cells; ++k)
    g.midpoints[k] = -1.0 + (k + 0.5) * g.cell_width;
  return g;
}

double quantize_scalar(const Grid& grid, double x) {
  if (!std::isfinite(x))
    throw Error(ErrorCode::NonFinite, "quantize_scalar: non-finite input");
  const double clamped = std::clamp(x, -1.0, 1.0);
  int idx = static_cast<int>(std::floor((clamped + 1.0) / grid.cell_width));
  idx = std::clamp(idx, 0, grid.cells - 1);
  return grid.midpoints[idx];
}

namespace {

MatrixTuple rebuild(const JointSpectrum& js,
                    const std::vector<std::vector<cplx>>& rows, bool hermitize) {
  const int n = js.q.n();
  const size_t m = rows.front().size();
  MatrixTuple out(m);
  for (size_t j = 0; j < m; ++j) {
    CMatrix comp(n);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        cplx sum = 0.0;
        for (int k = 0; k < n; ++k)
          sum += js.q.at(i, k) * rows[k][j] * std::conj(js.q.at(l, k));
        comp.at(i, l) = sum;
      }
    out[j] = hermitize ? hermitian_part(comp) : std::move(comp);
  }
  return out;
}

std::vector<MultiPoly> annihilators(const std::vector<std::vector<cplx>>& rows,
                                    double dedup_tol, int* max_degree) {
  const size_t m = rows.front().size();
  std::vector<MultiPoly> polys;
  int deg = 0;
  for (size_t j = 0; j < m; ++j) {
    std::vector<cplx> vals;
    for (const auto& row : rows) vals.push_back(row[j]);
    std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    MultiPoly p = MultiPoly::constant(1, 1.0);
    int d = 0;
    cplx last = 0.0;
    bool first = true;
    for (const cplx& v : vals) {
      if (!first && std::abs(v - last) <= dedup_tol) continue;
      MultiPoly factor = MultiPoly::variable(1, 0);
      factor.add_term({0}, -v);
      p = p * factor;
      last = v;
      first = false;
      ++d;
    }
    polys.push_back(std::move(p));
    deg = std::max(deg, d);
  }
  if (max_degree) *max_degree = deg;
  return polys;
}

void require_cube(const MatrixTuple& x, const ToleranceConfig& tol,
                  const char* where) {
  const int n = tuple_size(x, where);
  const double sn = std::sqrt(static_cast<double>(n));
  for (const CMatrix& c : x) {
    if (frobenius_distance(c, c.adjoint()) > tol.tol_member * sn)
      throw Error(ErrorCode::NotHermitian,
                  std::string(where) + ": component not hermitian");
    if (est_operator_norm(c) > 1.0 + tol.tol_member)
      throw Error(ErrorCode::NotMember,
                  std::string(where) + ": component not a contraction");
  }
}

}  // namespace

CpaResult cpa_hermitian(const MatrixTuple& x, double delta,
                        const ToleranceConfig& tol) {
  require_cube(x, tol, "cpa_hermitian");
  const Grid grid = build_grid(delta);
  JointSpectrum js = joint_diagonalize(x, tol);

  const int n = js.q.n();
  const size_t m = x.size();
  std::vector<std::vector<cplx>> rows(n, std::vector<cplx>(m));
  for (int k = 0; k < n; ++k)
    for (size_t j = 0; j < m; ++j)
      rows[k][j] = quantize_scalar(grid, js.lambda[k][j].real());

  CpaResult out;
  out.approximant = rebuild(js, rows, /*hermitize=*/true);
  out.delta_used = delta;
  out.achieved_distance = metric(x, out.approximant, tol);
  out.minimal_polys = annihilators(rows, tol.tol_cluster, &out.max_degree);
  out.quantized_rows = std::move(rows);
  return out;
}

CpaResult cpa_normal(const MatrixTuple& x, double delta,
                     const ToleranceConfig& tol) {
  tuple_size(x, "cpa_normal");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw Error(ErrorCode::BadDelta, "cpa_normal: delta must be positive");
  for (const CMatrix& c : x)
    if (est_operator_norm(c) > 1.0 + tol.tol_member)
      throw Error(ErrorCode::NotMember, "cpa_normal: component not a contraction");

  const Grid grid = build_grid(delta / 2.0);
  JointSpectrum js = joint_diagonalize(x, tol);

  const int n = js.q.n();
  const size_t m = x.size();
  std::vector<std::vector<cplx>> rows(n, std::vector<cplx>(m));
  for (int k = 0; k < n; ++k)
    for (size_t j = 0; j < m; ++j) {
      cplx q(quantize_scalar(grid, js.lambda[k][j].real()),
             quantize_scalar(grid, js.lambda[k][j].imag()));
      const double mod = std::abs(q);
      if (mod > 1.0) q /= mod;
      rows[k][j] = q;
    }

  CpaResult out;
  out.approximant = rebuild(js, rows, /*hermitize=*/false);
  out.delta_used = delta;
  out.achieved_distance = metric(x, out.approximant, tol);
  out.minimal_polys = annihilators(rows, tol.tol_cluster, &out.max_degree);
  out.quantized_rows = std::move(rows);
  return out;
}

MatrixTuple retract_to_grid(const MatrixTuple& x,
                            const std::vector<double>& targets,
                            const ToleranceConfig& tol) {
  require_cube(x, tol, "retract_to_grid");
  if (targets.empty())
    throw Error(ErrorCode::BadParameter, "retract_to_grid: no target values");
  std::vector<double> sorted = targets;
  std::sort(sorted.begin(), sorted.end());

  JointSpectrum js = joint_diagonalize(x, tol);
  const int n = js.q.n();
  const size_t m = x.size();
  std::vector<std::vector<cplx>> rows(n, std::vector<cplx>(m));
  for (int k = 0; k < n; ++k)
    for (size_t j = 0; j < m; ++j) {
      const double v = js.lambda[k][j].real();
      double best = sorted.front();
      for (double t : sorted)
        if (std::abs(t - v) < std::abs(best - v)) best = t;  // ties keep smaller
      rows[k][j] = best;
    }
  return rebuild(js, rows, /*hermitize=*/true);
}

}  // namespace zpath
