#include "zpath/opu.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace zpath {

void validate_opu(const OPU& p, const ToleranceConfig& tol) {
  if (p.projectors.empty())
    throw Error(ErrorCode::InvalidOPU, "validate_opu: no projectors");
  const int n = p.projectors.front().n();
  const double gate = tol.tol_recon * std::sqrt(static_cast<double>(n)) * 100.0;
  CMatrix sum(n);
  for (const CMatrix& pr : p.projectors) {
    if (pr.n() != n)
      throw Error(ErrorCode::InvalidOPU, "validate_opu: size mismatch");
    require_finite(pr, "validate_opu");
    if (frobenius_distance(pr, pr.adjoint()) > gate)
      throw Error(ErrorCode::InvalidOPU, "validate_opu: projector not hermitian");
    if (frobenius_distance(mul(pr, pr), pr) > gate)
      throw Error(ErrorCode::InvalidOPU, "validate_opu: projector not idempotent");
    sum += pr;
  }
  for (size_t a = 0; a < p.projectors.size(); ++a)
    for (size_t b = a + 1; b < p.projectors.size(); ++b)
      if (mul(p.projectors[a], p.projectors[b]).frobenius() > gate)
        throw Error(ErrorCode::InvalidOPU, "validate_opu: projectors overlap");
  if (frobenius_distance(sum, CMatrix::identity(n)) > gate)
    throw Error(ErrorCode::InvalidOPU, "validate_opu: projectors do not sum to 1");
  if (!p.labels.empty() && p.labels.size() != p.projectors.size())
    throw Error(ErrorCode::InvalidOPU, "validate_opu: label count mismatch");
}

OPU opu_from_spectrum(const JointSpectrum& s, double cluster_tol,
                      const ToleranceConfig& tol) {
  const int n = s.q.n();
  if (cluster_tol <= 0.0 || !std::isfinite(cluster_tol))
    throw Error(ErrorCode::BadParameter, "opu_from_spectrum: bad cluster_tol");

  // Single-linkage clustering of the lambda rows.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto row_dist = [&](int a, int b) {
    double d = 0.0;
    for (size_t j = 0; j < s.lambda[a].size(); ++j)
      d += std::norm(s.lambda[a][j] - s.lambda[b][j]);
    return std::sqrt(d);
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (row_dist(a, b) <= cluster_tol) parent[find(a)] = find(b);

  std::vector<std::vector<int>> clusters;
  std::vector<int> root_to_cluster(n, -1);
  for (int a = 0; a < n; ++a) {
    const int r = find(a);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[root_to_cluster[r]].push_back(a);
  }

  OPU out;
  for (const auto& rows : clusters) {
    out.projectors.push_back(joint_spectral_projector(s, rows));
    std::vector<cplx> centroid(s.lambda.front().size(), 0.0);
    for (int r : rows)
      for (size_t j = 0; j < centroid.size(); ++j) centroid[j] += s.lambda[r][j];
    for (cplx& c : centroid) c /= static_cast<double>(rows.size());
    out.labels.push_back(std::move(centroid));
  }

  for (size_t a = 0; a < out.labels.size(); ++a)
    for (size_t b = a + 1; b < out.labels.size(); ++b) {
      double d = 0.0;
      for (size_t j = 0; j < out.labels[a].size(); ++j)
        d += std::norm(out.labels[a][j] - out.labels[b][j]);
      if (std::sqrt(d) < 2.0 * cluster_tol)
        throw Error(ErrorCode::ClusterOverlap,
                    "opu_from_spectrum: cluster centroids too close");
    }
  validate_opu(out, tol);
  return out;
}

OPU projective_refinement(const std::vector<OPU>& parts,
                          const ToleranceConfig& tol) {
  if (parts.empty())
    throw Error(ErrorCode::InvalidOPU, "projective_refinement: no parts");
  for (const OPU& p : parts) validate_opu(p, tol);
  const int n = parts.front().projectors.front().n();
  const double commute_gate =
      tol.tol_commute * std::sqrt(static_cast<double>(n)) * 10.0;
  for (size_t a = 0; a < parts.size(); ++a)
    for (size_t b = a + 1; b < parts.size(); ++b)
      for (const CMatrix& pa : parts[a].projectors)
        for (const CMatrix& pb : parts[b].projectors)
          if (commutator(pa, pb).frobenius() > commute_gate)
            throw Error(ErrorCode::NotCommutingOPUs,
                        "projective_refinement: parts do not commute");

  std::vector<CMatrix> current{CMatrix::identity(n)};
  for (const OPU& p : parts) {
    std::vector<CMatrix> next;
    for (const CMatrix& acc : current)
      for (const CMatrix& pr : p.projectors) {
        CMatrix prod = mul(acc, pr);
        if (operator_norm(prod, tol) > 0.5) next.push_back(std::move(prod));
      }
    current = std::move(next);
  }

  OPU out;
  for (CMatrix& prod : current) {
    // Round back to an exact projector through spectral calculus.
    EigenDecomposition e = hermitian_eigen(hermitian_part(prod), tol);
    CMatrix rounded(n);
    for (int c = 0; c < n; ++c) {
      if (e.values[c] < 0.5) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          rounded.at(i, j) += e.q.at(i, c) * std::conj(e.q.at(j, c));
    }
    out.projectors.push_back(hermitian_part(rounded));
  }
  validate_opu(out, tol);
  return out;
}

std::vector<PolarResult> projective_polar(const OPU& p, const CMatrix& x,
                                          const ToleranceConfig& tol) {
  validate_opu(p, tol);
  const int n = x.n();
  require_finite(x, "projective_polar");
  if (p.projectors.front().n() != n)
    throw Error(ErrorCode::ShapeMismatch, "projective_polar: size mismatch");

  std::vector<PolarResult> out;
  for (const CMatrix& pr : p.projectors) {
    EigenDecomposition e = hermitian_eigen(pr, tol);
    int rank = 0;
    for (double v : e.values)
      if (v > 0.5) ++rank;
    // Range basis: top `rank` eigenvector columns.
    const int lo = n - rank;
    // Compressed block S* X S.
    CMatrix xs(rank);
    {
      std::vector<cplx> col(n), tmp(n);
      std::vector<std::vector<cplx>> xcols(rank, std::vector<cplx>(n));
      for (int c = 0; c < rank; ++c) {
        for (int i = 0; i < n; ++i) col[i] = e.q.at(i, lo + c);
        matvec(x, col.data(), xcols[c].data());
      }
      for (int a = 0; a < rank; ++a)
        for (int b = 0; b < rank; ++b) {
          cplx sum = 0.0;
          for (int i = 0; i < n; ++i)
            sum += std::conj(e.q.at(i, lo + a)) * xcols[b][i];
          xs.at(a, b) = sum;
        }
    }
    PolarResult block = polar_decompose(xs, tol);
    // Lift S M S* in two passes: T = M S*, then S T.
    auto lift = [&](const CMatrix& mblk) {
      std::vector<cplx> t(static_cast<size_t>(rank) * n, 0.0);
      for (int a = 0; a < rank; ++a)
        for (int b = 0; b < rank; ++b) {
          const cplx mv = mblk.at(a, b);
          if (mv == cplx(0.0)) continue;
          for (int j = 0; j < n; ++j)
            t[static_cast<size_t>(a) * n + j] += mv * std::conj(e.q.at(j, lo + b));
        }
      CMatrix r(n);
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < rank; ++a) {
          const cplx qv = e.q.at(i, lo + a);
          if (qv == cplx(0.0)) continue;
          for (int j = 0; j < n; ++j)
            r.at(i, j) += qv * t[static_cast<size_t>(a) * n + j];
        }
      return r;
    };
    PolarResult lifted;
    lifted.v = lift(block.v);
    lifted.r = lift(block.r);
    out.push_back(std::move(lifted));
  }
  return out;
}

}  // namespace zpath
