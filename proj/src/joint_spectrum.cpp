#include "zpath/joint_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "zpath/eigen.hpp"

namespace zpath {

namespace {

double uniform_pm1(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

// Hc = S* H S where S = Q[:, start .. start+len).
CMatrix compress(const CMatrix& h, const CMatrix& q, int start, int len) {
  const int n = h.n();
  // T = H S
  std::vector<cplx> t(static_cast<size_t>(n) * len, 0.0);
  for (int i = 0; i < n; ++i) {
    const cplx* hrow = h.data() + static_cast<size_t>(i) * n;
    for (int k = 0; k < n; ++k) {
      const cplx hv = hrow[k];
      if (hv == cplx(0.0)) continue;
      const cplx* qrow = q.data() + static_cast<size_t>(k) * q.n() + start;
      cplx* trow = t.data() + static_cast<size_t>(i) * len;
      for (int c = 0; c < len; ++c) trow[c] += hv * qrow[c];
    }
  }
  CMatrix hc(len);
  for (int a = 0; a < len; ++a)
    for (int b = 0; b < len; ++b) {
      cplx sum = 0.0;
      for (int i = 0; i < n; ++i)
        sum += std::conj(q.at(i, start + a)) * t[static_cast<size_t>(i) * len + b];
      hc.at(a, b) = sum;
    }
  return hc;
}

// Q[:, start .. start+len) <- Q[:, start .. start+len) * U.
void apply_update(CMatrix& q, int start, int len, const CMatrix& u) {
  const int n = q.n();
  std::vector<cplx> row(len);
  for (int i = 0; i < n; ++i) {
    cplx* qrow = q.data() + static_cast<size_t>(i) * n + start;
    for (int c = 0; c < len; ++c) {
      cplx sum = 0.0;
      for (int k = 0; k < len; ++k) sum += qrow[k] * u.at(k, c);
      row[c] = sum;
    }
    for (int c = 0; c < len; ++c) qrow[c] = row[c];
  }
}

}  // namespace

JointSpectrum joint_diagonalize(const MatrixTuple& x, const ToleranceConfig& tol,
                                uint64_t seed) {
  const int n = tuple_size(x, "joint_diagonalize");
  const size_t m = x.size();
  const double sn = std::sqrt(static_cast<double>(n));

  for (size_t j = 0; j < m; ++j) {
    const CMatrix adj = x[j].adjoint();
    if (frobenius_distance(mul(x[j], adj), mul(adj, x[j])) >
        tol.tol_member * sn * std::max(1.0, x[j].frobenius()))
      throw Error(ErrorCode::NotNormal, "joint_diagonalize: component not normal");
    for (size_t k = j + 1; k < m; ++k)
      if (commutator(x[j], x[k]).frobenius() > tol.tol_commute * sn)
        throw Error(ErrorCode::NotCommuting,
                    "joint_diagonalize: components do not commute");
  }

  std::vector<CMatrix> comps;
  comps.reserve(2 * m);
  for (size_t j = 0; j < m; ++j) {
    comps.push_back(hermitian_part(x[j]));
    comps.push_back(anti_hermitian_imag(x[j]));
  }

  std::mt19937_64 rng(seed);
  CMatrix h0(n);
  for (const CMatrix& c : comps) {
    CMatrix scaled = c;
    scaled *= uniform_pm1(rng);
    h0 += scaled;
  }

  CMatrix q = CMatrix::identity(n);
  std::vector<std::pair<int, int>> blocks{{0, n}};

  for (size_t stage = 0; stage <= comps.size(); ++stage) {
    bool all_singleton = true;
    for (const auto& b : blocks)
      if (b.second > 1) all_singleton = false;
    if (all_singleton) break;

    const CMatrix& h = stage == 0 ? h0 : comps[stage - 1];
    if (stage > 0 && h.frobenius() == 0.0) continue;

    std::vector<std::pair<int, int>> next;
    for (const auto& [start, len] : blocks) {
      if (len == 1) {
        next.emplace_back(start, len);
        continue;
      }
      EigenDecomposition e = hermitian_eigen(compress(h, q, start, len), tol);
      apply_update(q, start, len, e.q);
      int run = 0;
      for (int c = 1; c <= len; ++c) {
        if (c == len || e.values[c] - e.values[c - 1] > tol.tol_cluster) {
          next.emplace_back(start + run, c - run);
          run = c;
        }
      }
    }
    blocks = std::move(next);
  }

  JointSpectrum out;
  out.q = std::move(q);
  out.lambda.assign(n, std::vector<cplx>(m));
  out.recon_residual.assign(m, 0.0);
  for (size_t j = 0; j < m; ++j) {
    CMatrix d = conj_transpose_mul(out.q, mul(x[j], out.q));
    double off = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) off += std::norm(d.at(a, b));
    out.recon_residual[j] = std::sqrt(off);
    for (int k = 0; k < n; ++k) out.lambda[k][j] = d.at(k, k);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    for (size_t j = 0; j < m; ++j) {
      const cplx va = out.lambda[a][j], vb = out.lambda[b][j];
      if (va.real() != vb.real()) return va.real() < vb.real();
      if (va.imag() != vb.imag()) return va.imag() < vb.imag();
    }
    return false;
  });
  std::vector<std::vector<cplx>> sorted_lambda(n);
  CMatrix sorted_q(n);
  for (int k = 0; k < n; ++k) {
    sorted_lambda[k] = std::move(out.lambda[order[k]]);
    for (int i = 0; i < n; ++i) sorted_q.at(i, k) = out.q.at(i, order[k]);
  }
  out.lambda = std::move(sorted_lambda);
  out.q = std::move(sorted_q);
  return out;
}

CMatrix joint_spectral_projector(const JointSpectrum& s,
                                 const std::vector<int>& rows) {
  const int n = s.q.n();
  std::vector<char> seen(n, 0);
  CMatrix p(n);
  for (int k : rows) {
    if (k < 0 || k >= n)
      throw Error(ErrorCode::IndexOutOfRange, "joint_spectral_projector: bad row");
    if (seen[k])
      throw Error(ErrorCode::IndexOutOfRange,
                  "joint_spectral_projector: duplicate row");
    seen[k] = 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        p.at(i, j) += s.q.at(i, k) * std::conj(s.q.at(j, k));
  }
  return hermitian_part(p);
}

}  // namespace zpath
