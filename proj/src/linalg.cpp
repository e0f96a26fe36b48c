#include "zpath/linalg.hpp"

#include <cmath>

#include "zpath/joint_spectrum.hpp"

namespace zpath {

double operator_norm(const CMatrix& a, const ToleranceConfig& tol) {
  require_finite(a, "operator_norm");
  if (a.n() == 0) return 0.0;
  EigenDecomposition e = hermitian_eigen(conj_transpose_mul(a, a), tol);
  return std::sqrt(std::max(0.0, e.values.back()));
}

double est_operator_norm(const CMatrix& a, std::vector<cplx>* warm) {
  const int n = a.n();
  if (n == 0) return 0.0;
  const double fro = a.frobenius();
  if (fro <= 1e-12) return fro;  // upper bound; exact enough below every gate

  std::vector<cplx> v;
  if (warm && static_cast<int>(warm->size()) == n) {
    v = *warm;
  } else {
    v.resize(n);
    // Deterministic pseudo-random start (splitmix64 over the index).
    uint64_t s = 0x9e3779b97f4a7c15ull ^ (static_cast<uint64_t>(n) << 17);
    for (int i = 0; i < n; ++i) {
      s += 0x9e3779b97f4a7c15ull;
      uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      z ^= z >> 31;
      const double re = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
      const double im = static_cast<double>((z * 0x2545f4914f6cdd1dull) >> 11) * 0x1.0p-53 - 0.5;
      v[i] = cplx(re, im);
    }
  }
  double nv = 0.0;
  for (const cplx& z : v) nv += std::norm(z);
  nv = std::sqrt(nv);
  if (nv == 0.0) { v.assign(n, 0.0); v[0] = 1.0; nv = 1.0; }
  for (cplx& z : v) z /= nv;

  std::vector<cplx> y(n), z(n);
  double sigma = 0.0;
  for (int it = 0; it < 500; ++it) {
    matvec(a, v.data(), y.data());
    double ny = 0.0;
    for (const cplx& w : y) ny += std::norm(w);
    ny = std::sqrt(ny);
    if (ny <= 1e-300) { sigma = 0.0; break; }
    matvec_adjoint(a, y.data(), z.data());
    double nz = 0.0;
    for (const cplx& w : z) nz += std::norm(w);
    nz = std::sqrt(nz);
    const double prev = sigma;
    sigma = ny;  // v is unit, so ||Av|| is the current estimate
    if (nz <= 1e-300) break;
    for (int i = 0; i < n; ++i) v[i] = z[i] / nz;
    if (it >= 3 && std::abs(sigma - prev) <= 1e-13 * sigma) break;
  }
  if (warm) *warm = v;
  return sigma;
}

double est_linop_norm(int n, const LinOpFn& apply, const LinOpFn& apply_adjoint,
                      std::vector<cplx>* warm) {
  if (n == 0) return 0.0;
  std::vector<cplx> v;
  if (warm && static_cast<int>(warm->size()) == n) {
    v = *warm;
  } else {
    v.resize(n);
    uint64_t s = 0xc2b2ae3d27d4eb4full ^ (static_cast<uint64_t>(n) << 17);
    for (int i = 0; i < n; ++i) {
      s += 0x9e3779b97f4a7c15ull;
      uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      z ^= z >> 31;
      const double re = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
      const double im = static_cast<double>((z * 0x2545f4914f6cdd1dull) >> 11) * 0x1.0p-53 - 0.5;
      v[i] = cplx(re, im);
    }
  }
  double nv = 0.0;
  for (const cplx& z : v) nv += std::norm(z);
  nv = std::sqrt(nv);
  if (nv == 0.0) { v.assign(n, 0.0); v[0] = 1.0; nv = 1.0; }
  for (cplx& z : v) z /= nv;

  std::vector<cplx> y(n), z(n);
  double sigma = 0.0;
  for (int it = 0; it < 500; ++it) {
    apply(v.data(), y.data());
    double ny = 0.0;
    for (const cplx& w : y) ny += std::norm(w);
    ny = std::sqrt(ny);
    if (ny <= 1e-300) { sigma = 0.0; break; }
    apply_adjoint(y.data(), z.data());
    double nz = 0.0;
    for (const cplx& w : z) nz += std::norm(w);
    nz = std::sqrt(nz);
    const double prev = sigma;
    sigma = ny;
    if (nz <= 1e-300) break;
    for (int i = 0; i < n; ++i) v[i] = z[i] / nz;
    if (it >= 3 && std::abs(sigma - prev) <= 1e-13 * sigma) break;
  }
  if (warm) *warm = v;
  return sigma;
}

PolarResult polar_decompose(const CMatrix& a, const ToleranceConfig& tol) {
  require_finite(a, "polar_decompose");
  const int n = a.n();
  EigenDecomposition e = hermitian_eigen(conj_transpose_mul(a, a), tol);

  std::vector<double> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = std::sqrt(std::max(0.0, e.values[i]));
  const double smax = n > 0 ? sigma.back() : 0.0;
  const double thresh = std::max(smax * n * 1e-14, 1e-290);

  // R = U diag(sigma) U*.
  CMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (int k = 0; k < n; ++k)
        sum += e.q.at(i, k) * sigma[k] * std::conj(e.q.at(j, k));
      r.at(i, j) = sum;
    }
  r = hermitian_part(r);

  // Column i of W is A u_i / sigma_i where defined; remaining columns are a
  // deterministic orthonormal completion.
  CMatrix w(n);
  std::vector<int> fill_order;           // descending sigma first
  std::vector<char> have(n, 0);
  for (int i = n - 1; i >= 0; --i)
    if (sigma[i] > thresh) fill_order.push_back(i);
  std::vector<std::vector<cplx>> cols;   // in fill order, for Gram-Schmidt
  std::vector<cplx> ui(n), wi(n);
  for (int i : fill_order) {
    for (int row = 0; row < n; ++row) ui[row] = e.q.at(row, i);
    matvec(a, ui.data(), wi.data());
    for (int row = 0; row < n; ++row) wi[row] /= sigma[i];
    // Re-orthonormalize against previously built columns.
    for (const auto& c : cols) {
      cplx dot = 0.0;
      for (int row = 0; row < n; ++row) dot += std::conj(c[row]) * wi[row];
      for (int row = 0; row < n; ++row) wi[row] -= dot * c[row];
    }
    double norm = 0.0;
    for (int row = 0; row < n; ++row) norm += std::norm(wi[row]);
    norm = std::sqrt(norm);
    if (norm > 1e-8) {
      for (int row = 0; row < n; ++row) wi[row] /= norm;
    } else {
      // Degenerate direction; treat as part of the null completion below.
      continue;
    }
    for (int row = 0; row < n; ++row) w.at(row, i) = wi[row];
    cols.push_back(wi);
    have[i] = 1;
  }
  int next_basis = 0;
  for (int i = 0; i < n; ++i) {
    if (have[i]) continue;
    // Try standard basis vectors in index order until one survives.
    while (next_basis < n) {
      std::vector<cplx> cand(n, 0.0);
      cand[next_basis++] = 1.0;
      for (const auto& c : cols) {
        cplx dot = 0.0;
        for (int row = 0; row < n; ++row) dot += std::conj(c[row]) * cand[row];
        for (int row = 0; row < n; ++row) cand[row] -= dot * c[row];
      }
      double norm = 0.0;
      for (int row = 0; row < n; ++row) norm += std::norm(cand[row]);
      norm = std::sqrt(norm);
      if (norm > 0.5 / std::sqrt(static_cast<double>(n))) {
        for (int row = 0; row < n; ++row) {
          cand[row] /= norm;
          w.at(row, i) = cand[row];
        }
        cols.push_back(cand);
        have[i] = 1;
        break;
      }
    }
    if (!have[i])
      throw Error(ErrorCode::NonFinite, "polar_decompose: completion failed");
  }

  PolarResult out;
  out.v = mul_conj_transpose(w, e.q);
  out.r = std::move(r);
  return out;
}

CMatrix full_pinching(const CMatrix& w, const std::vector<CMatrix>& projectors) {
  require_finite(w, "full_pinching");
  CMatrix acc(w.n());
  for (const CMatrix& p : projectors) {
    require_square_same(w, p, "full_pinching");
    acc += mul(p, mul(w, p));
  }
  return acc;
}

CMatrix unitary_exp(const CMatrix& k, double t, const ToleranceConfig& tol) {
  require_finite(k, "unitary_exp");
  if (!std::isfinite(t)) throw Error(ErrorCode::BadParameter, "unitary_exp: bad t");
  const double fro = k.frobenius();
  if (frobenius_distance(k, cplx(-1.0) * k.adjoint()) >
      tol.tol_member * std::max(1.0, fro))
    throw Error(ErrorCode::NotSkewHermitian, "unitary_exp: K not skew-hermitian");

  // K = iH with H hermitian; exp(tK) = Q diag(exp(i t lambda)) Q*.
  CMatrix h = k;
  h *= cplx(0.0, -1.0);
  EigenDecomposition e = hermitian_eigen(h, tol);
  const int n = k.n();
  CMatrix out(n);
  std::vector<cplx> phase(n);
  for (int j = 0; j < n; ++j)
    phase[j] = std::polar(1.0, t * e.values[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (int c = 0; c < n; ++c)
        sum += e.q.at(i, c) * phase[c] * std::conj(e.q.at(j, c));
      out.at(i, j) = sum;
    }
  return out;
}

CMatrix principal_skew_log(const CMatrix& w, const ToleranceConfig& tol,
                           bool allow_branch_edge) {
  require_finite(w, "principal_skew_log");
  const int n = w.n();
  CMatrix gram = conj_transpose_mul(w, w);
  gram -= CMatrix::identity(n);
  if (gram.frobenius() > tol.tol_unitary * std::sqrt(static_cast<double>(n)) * 10.0)
    throw Error(ErrorCode::NotUnitary, "principal_skew_log: input not unitary");

  // Joint diagonalization of (Re W, Im W) recovers the unitary eigenvalues.
  MatrixTuple parts;
  parts.push_back(hermitian_part(w));
  parts.push_back(anti_hermitian_imag(w));
  JointSpectrum js = joint_diagonalize(parts, tol);

  std::vector<double> theta(n);
  for (int k = 0; k < n; ++k) {
    const double x = js.lambda[k][0].real();
    const double y = js.lambda[k][1].real();
    if (!allow_branch_edge &&
        std::hypot(x + 1.0, y) <= tol.tol_cluster)
      throw Error(ErrorCode::BranchEdge,
                  "principal_skew_log: spectrum touches -1");
    theta[k] = std::atan2(y, x);
  }
  CMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (int c = 0; c < n; ++c)
        sum += js.q.at(i, c) * cplx(0.0, theta[c]) * std::conj(js.q.at(j, c));
      out.at(i, j) = sum;
    }
  // Remove the hermitian round-off component.
  CMatrix skew = out;
  skew -= out.adjoint();
  skew *= 0.5;
  return skew;
}

}  // namespace zpath
