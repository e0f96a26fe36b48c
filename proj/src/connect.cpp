#include "zpath/connect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

#include "zpath/correction.hpp"
#include "zpath/joint_spectrum.hpp"
#include "zpath/linalg.hpp"
#include "zpath/opu.hpp"

namespace zpath {

namespace {

void require_epsilon(double epsilon, const char* where) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::BadParameter, std::string(where) + ": bad epsilon");
  if (epsilon >= epsilon_limit())
    throw Error(ErrorCode::EpsilonTooLarge,
                std::string(where) + ": epsilon exceeds 4 sin(1/8)");
}

struct MatchData {
  JointSpectrum sx, sy;
  std::vector<int> x_zero, y_zero;  // zero-set index per joint-eigenvalue row
  CMatrix w_hat;
  double max_snap = 0.0;
};

MatchData match_tuples(const MatrixTuple& x, const MatrixTuple& y,
                       const ZeroSet& z, const ToleranceConfig& tol) {
  MatchData md;
  md.sx = joint_diagonalize(x, tol);
  md.sy = joint_diagonalize(y, tol);
  const int n = md.sx.q.n();
  const double snap_gate =
      std::max(tol.tol_member, std::isfinite(z.gap) ? z.gap / 3.0 : 1e300);

  auto snap = [&](const JointSpectrum& s, std::vector<int>& out) {
    for (int k = 0; k < n; ++k) {
      auto [idx, dist] = nearest_zero(z, s.lambda[k]);
      if (dist > snap_gate)
        throw Error(ErrorCode::SpectraOffZeroSet,
                    "isospectral_match: joint eigenvalue off the zero set");
      md.max_snap = std::max(md.max_snap, dist);
      out.push_back(idx);
    }
  };
  snap(md.sx, md.x_zero);
  snap(md.sy, md.y_zero);

  std::map<int, std::vector<int>> x_rows, y_rows;
  for (int k = 0; k < n; ++k) {
    x_rows[md.x_zero[k]].push_back(k);
    y_rows[md.y_zero[k]].push_back(k);
  }
  if (x_rows.size() != y_rows.size())
    throw Error(ErrorCode::DeltaTooLarge,
                "isospectral_match: spectra cover different zero points");
  for (const auto& [idx, rows] : x_rows) {
    auto it = y_rows.find(idx);
    if (it == y_rows.end() || it->second.size() != rows.size())
      throw Error(ErrorCode::DeltaTooLarge,
                  "isospectral_match: joint multiplicities differ");
  }

  md.w_hat = CMatrix(n);
  for (const auto& [idx, xr] : x_rows) {
    const auto& yr = y_rows[idx];
    for (size_t p = 0; p < xr.size(); ++p) {
      const int xc = xr[p], yc = yr[p];
      for (int i = 0; i < n; ++i) {
        const cplx qy = md.sy.q.at(i, yc);
        for (int j = 0; j < n; ++j)
          md.w_hat.at(i, j) += qy * std::conj(md.sx.q.at(j, xc));
      }
    }
  }
  return md;
}

std::vector<cplx> column(const JointSpectrum& s, size_t j) {
  std::vector<cplx> out;
  out.reserve(s.lambda.size());
  for (const auto& row : s.lambda) out.push_back(row[j]);
  return out;
}

}  // namespace

CMatrix isospectral_match(const MatrixTuple& x, const MatrixTuple& y,
                          const ZeroSet& z, const ToleranceConfig& tol) {
  const int n = tuple_size(x, "isospectral_match");
  if (x.size() != y.size() || tuple_size(y, "isospectral_match") != n)
    throw Error(ErrorCode::ShapeMismatch, "isospectral_match: shapes differ");
  if (static_cast<int>(x.size()) != z.vars)
    throw Error(ErrorCode::ShapeMismatch, "isospectral_match: arity mismatch");
  return match_tuples(x, y, z, tol).w_hat;
}

DeltaBudget delta_budget(const ZeroSet& z, double epsilon, int m, double k_m) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::BadParameter, "delta_budget: bad epsilon");
  if (m <= 0 || z.vars != m)
    throw Error(ErrorCode::BadParameter, "delta_budget: bad arity");
  if (!(k_m > 0.0) || !std::isfinite(k_m))
    throw Error(ErrorCode::BadParameter, "delta_budget: bad K_m");

  DeltaBudget b;
  b.k_m = k_m;
  double min_gap = std::numeric_limits<double>::infinity();
  ToleranceConfig tol;
  for (int k = 0; k < m; ++k) {
    std::vector<cplx> vals;
    for (const auto& pt : z.points) vals.push_back(pt[k]);
    std::sort(vals.begin(), vals.end(), [](cplx a, cplx b2) {
      if (a.real() != b2.real()) return a.real() < b2.real();
      return a.imag() < b2.imag();
    });
    std::vector<cplx> distinct;
    for (const cplx& v : vals)
      if (distinct.empty() || std::abs(v - distinct.back()) > tol.tol_cluster)
        distinct.push_back(v);
    const int sz = static_cast<int>(distinct.size());
    b.k_prod *= sz;
    b.l_max = std::max(b.l_max, sz);
    for (size_t a2 = 0; a2 + 1 < distinct.size(); ++a2)
      for (size_t b2 = a2 + 1; b2 < distinct.size(); ++b2)
        min_gap = std::min(min_gap, std::abs(distinct[a2] - distinct[b2]));
  }

  if (b.l_max < 2) {
    // Every coordinate is a single value: members coincide and any flat
    // budget works.
    b.degenerate = true;
    b.h_p = 0.0;
    b.delta = epsilon;
    return b;
  }
  b.h_p = min_gap / (3.0 * k_m);
  b.delta = 2.0 * b.h_p * std::asin(epsilon / 4.0) /
            (3.0 * std::numbers::pi * std::sqrt(2.0) * static_cast<double>(m) * k_m *
             static_cast<double>(b.k_prod) * static_cast<double>(b.l_max) *
             static_cast<double>(b.l_max - 1));
  return b;
}

PathResult homomorphism_path(const MatrixTuple& x, const MatrixTuple& y,
                             const ZeroSet& z, double epsilon,
                             const ToleranceConfig& tol) {
  require_epsilon(epsilon, "homomorphism_path");
  const int n = tuple_size(x, "homomorphism_path");
  if (x.size() != y.size() || tuple_size(y, "homomorphism_path") != n)
    throw Error(ErrorCode::ShapeMismatch, "homomorphism_path: shapes differ");
  const size_t m = x.size();
  if (static_cast<int>(m) != z.vars)
    throw Error(ErrorCode::ShapeMismatch, "homomorphism_path: arity mismatch");

  if (metric_est(x, y) <= 1e-14) {
    CMatrix zero(n);
    PathResult out{MatrixPath({make_conjugation(y, zero, 1.0, 0.0, tol)}), {}};
    out.diagnostics.push_back({"almost_unit_bound", 1e-9, 0.0, true});
    out.diagnostics.push_back({"correction_commutes", tol.tol_commute, 0.0, true});
    out.diagnostics.push_back({"log_norm_bound", 1e-9, 0.0, true});
    out.diagnostics.push_back(
        {"k_vs_2asin_eps4", 2.0 * std::asin(epsilon / 4.0) + tol.tol_recon, 0.0, true});
    out.diagnostics.push_back(
        {"k_vs_2asin_eps2", 2.0 * std::asin(epsilon / 2.0) + tol.tol_recon, 0.0, true});
    out.diagnostics.push_back({"match_snap_distance",
                               std::isfinite(z.gap) ? z.gap / 3.0 : 0.0, 0.0, true});
    return out;
  }

  MatchData md = match_tuples(x, y, z, tol);

  // Per-component spectral OPUs of Y, refined to the joint clusters.
  std::vector<OPU> parts;
  for (size_t j = 0; j < m; ++j) {
    const std::vector<cplx> col = column(md.sy, j);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (col[a].real() != col[b].real()) return col[a].real() < col[b].real();
      return col[a].imag() < col[b].imag();
    });
    OPU opu;
    std::vector<int> cluster;
    auto flush = [&]() {
      if (cluster.empty()) return;
      opu.projectors.push_back(joint_spectral_projector(md.sy, cluster));
      cplx mean = 0.0;
      for (int r : cluster) mean += col[r];
      mean /= static_cast<double>(cluster.size());
      opu.labels.push_back({mean});
      cluster.clear();
    };
    for (int i = 0; i < n; ++i) {
      if (!cluster.empty() &&
          std::abs(col[order[i]] - col[cluster.back()]) > tol.tol_cluster)
        flush();
      cluster.push_back(order[i]);
    }
    flush();
    parts.push_back(std::move(opu));
  }
  OPU refined = projective_refinement(parts, tol);

  CorrectionResult corr = refined_commuting_correction(md.w_hat, y, refined, tol);
  // The commuting unitary near w_hat is Z*; log the product carrying Y to X.
  const CMatrix w_total = conj_transpose_mul(md.w_hat, corr.z.adjoint());
  const CMatrix k = principal_skew_log(w_total, tol);

  const double k_norm = est_operator_norm(k);
  const double one_minus_w =
      est_operator_norm(CMatrix::identity(n) - w_total);

  PathResult out{MatrixPath({make_conjugation(y, k, 1.0, 0.0, tol)}), {}};
  out.diagnostics.push_back({"almost_unit_bound",
                             corr.bound_constant * corr.residual + 1e-9,
                             corr.achieved, corr.bound_holds});
  out.diagnostics.push_back({"correction_commutes", tol.tol_commute,
                             corr.z_commutator,
                             corr.z_commutator <= tol.tol_commute});
  out.diagnostics.push_back({"log_norm_bound",
                             std::numbers::pi / 2.0 * one_minus_w + 1e-9, k_norm,
                             k_norm <= std::numbers::pi / 2.0 * one_minus_w + 1e-9});
  out.diagnostics.push_back({"k_vs_2asin_eps4",
                             2.0 * std::asin(epsilon / 4.0) + tol.tol_recon,
                             k_norm,
                             k_norm <= 2.0 * std::asin(epsilon / 4.0) + tol.tol_recon});
  out.diagnostics.push_back({"k_vs_2asin_eps2",
                             2.0 * std::asin(epsilon / 2.0) + tol.tol_recon,
                             k_norm,
                             k_norm <= 2.0 * std::asin(epsilon / 2.0) + tol.tol_recon});
  out.diagnostics.push_back({"match_snap_distance",
                             std::isfinite(z.gap) ? z.gap / 3.0 : 0.0,
                             md.max_snap, true});
  return out;
}

PathResult connect_cube(const MatrixTuple& x, const MatrixTuple& y,
                        const MultiPolySystem& system, const ZeroSet& z,
                        double epsilon, double k_m,
                        const ToleranceConfig& tol) {
  require_epsilon(epsilon, "connect_cube");
  if (!check_membership(x, SetFamily::Cube, &system, 0.0, tol).in_set)
    throw Error(ErrorCode::NotMember, "connect_cube: X not in the algebraic cube");
  if (!check_membership(y, SetFamily::Cube, &system, 0.0, tol).in_set)
    throw Error(ErrorCode::NotMember, "connect_cube: Y not in the algebraic cube");

  DeltaBudget budget = delta_budget(z, epsilon, static_cast<int>(x.size()), k_m);
  const double dist = metric_est(x, y);

  PathResult out = homomorphism_path(x, y, z, epsilon, tol);
  out.diagnostics.push_back({"delta_budget", budget.delta, dist,
                             budget.degenerate || dist <= budget.delta});
  return out;
}

PathResult connect_disk(const MatrixTuple& x, const MatrixTuple& y,
                        const MultiPolySystem& system, const ZeroSet& z,
                        double epsilon, double k_m,
                        const ToleranceConfig& tol) {
  require_epsilon(epsilon, "connect_disk");
  if (!check_membership(x, SetFamily::Disk, &system, 0.0, tol).in_set)
    throw Error(ErrorCode::NotMember, "connect_disk: X not in the algebraic disk");
  if (!check_membership(y, SetFamily::Disk, &system, 0.0, tol).in_set)
    throw Error(ErrorCode::NotMember, "connect_disk: Y not in the algebraic disk");

  RealifiedSystem real = realify_system(system, z.points);
  ZeroSet zr = validate_zero_set(real.zero_points, real.system, tol);

  PathResult inner = connect_cube(partition(x), partition(y), real.system, zr,
                                  epsilon / 2.0, k_m, tol);

  // Conjugation commutes with the juncture, so segments map componentwise.
  std::vector<PathSegment> segs;
  for (const PathSegment& seg : inner.path.segments()) {
    if (const auto* lin = std::get_if<LinearSegment>(&seg)) {
      segs.push_back(LinearSegment{juncture(lin->start), juncture(lin->end)});
    } else {
      const auto& c = std::get<ConjugationSegment>(seg);
      segs.push_back(retarget_conjugation(c, juncture(c.base)));
    }
  }
  return PathResult{MatrixPath(std::move(segs)), std::move(inner.diagnostics)};
}

MatrixTuple round_to_zero_set(const MatrixTuple& x, const ZeroSet& z,
                              const ToleranceConfig& tol) {
  const int n = tuple_size(x, "round_to_zero_set");
  const size_t m = x.size();
  if (static_cast<int>(m) != z.vars)
    throw Error(ErrorCode::ShapeMismatch, "round_to_zero_set: arity mismatch");

  JointSpectrum js = joint_diagonalize(x, tol);
  std::vector<const std::vector<cplx>*> snapped(n);
  for (int k = 0; k < n; ++k) {
    auto [idx, dist] = nearest_zero(z, js.lambda[k]);
    if (std::isfinite(z.gap) && dist >= z.gap / 2.0)
      throw Error(ErrorCode::NoNearbyZero,
                  "round_to_zero_set: joint eigenvalue too far from the zero set");
    snapped[k] = &z.points[idx];
  }

  MatrixTuple out(m);
  for (size_t j = 0; j < m; ++j) {
    bool real_col = true;
    for (int k = 0; k < n; ++k)
      if ((*snapped[k])[j].imag() != 0.0) real_col = false;
    CMatrix comp(n);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        cplx sum = 0.0;
        for (int k = 0; k < n; ++k)
          sum += js.q.at(i, k) * (*snapped[k])[j] * std::conj(js.q.at(l, k));
        comp.at(i, l) = sum;
      }
    out[j] = real_col ? hermitian_part(comp) : std::move(comp);
  }
  return out;
}

PathResult connect_nearly_algebraic(const MatrixTuple& x, const MatrixTuple& y,
                                    const MultiPolySystem& system,
                                    const ZeroSet& z, double epsilon,
                                    SetFamily family, double k_m,
                                    const ToleranceConfig& tol) {
  require_epsilon(epsilon, "connect_nearly_algebraic");
  const double delta_prime = std::min(z.delta1, epsilon / 2.0);

  if (!check_membership(x, family, &system, delta_prime, tol).in_set)
    throw Error(ErrorCode::NotNearlyMember,
                "connect_nearly_algebraic: X residuals exceed the near-member gate");
  if (!check_membership(y, family, &system, delta_prime, tol).in_set)
    throw Error(ErrorCode::NotNearlyMember,
                "connect_nearly_algebraic: Y residuals exceed the near-member gate");

  MatrixTuple xr = round_to_zero_set(x, z, tol);
  MatrixTuple yr = round_to_zero_set(y, z, tol);

  PathResult mid = family == SetFamily::Cube
                       ? connect_cube(xr, yr, system, z, epsilon / 2.0, k_m, tol)
                       : connect_disk(xr, yr, system, z, epsilon / 2.0, k_m, tol);

  MatrixPath path = concat(flat_path(x, xr, tol), mid.path, tol);
  path = concat(path, flat_path(yr, y, tol), tol);

  PathResult out{std::move(path), std::move(mid.diagnostics)};
  out.diagnostics.push_back({"rounding_x", delta_prime, metric_est(x, xr),
                             metric_est(x, xr) <= delta_prime + tol.tol_recon});
  out.diagnostics.push_back({"rounding_y", delta_prime, metric_est(y, yr),
                             metric_est(y, yr) <= delta_prime + tol.tol_recon});
  return out;
}

}  // namespace zpath
