#include "zpath/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zpath {

namespace {

double offdiag_frobenius(const CMatrix& h) {
  double s = 0.0;
  const int n = h.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(h.at(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition hermitian_eigen(const CMatrix& h, const ToleranceConfig& tol) {
  require_finite(h, "hermitian_eigen");
  const int n = h.n();
  if (n <= 0) throw Error(ErrorCode::ShapeMismatch, "hermitian_eigen: empty matrix");

  const double fro = h.frobenius();
  if (frobenius_distance(h, h.adjoint()) > tol.tol_member * std::max(1.0, fro))
    throw Error(ErrorCode::NotHermitian, "hermitian_eigen: input not hermitian");

  CMatrix a = hermitian_part(h);
  CMatrix q = CMatrix::identity(n);

  const double stop = 1e-13 * std::max(fro, 1e-300);
  const double skip = 1e-15 * fro / std::max(1, n);

  for (int sweep = 0; sweep < 60 && n > 1; ++sweep) {
    if (offdiag_frobenius(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int qq = p + 1; qq < n; ++qq) {
        const cplx b = a.at(p, qq);
        const double babs = std::abs(b);
        if (babs <= skip) continue;

        // Phase u maps the pivot to a real symmetric 2x2, then a plane
        // rotation with the smaller angle zeroes it:
        //   tau = (H_qq - H_pp) / (2|b|),  t^2 + 2 tau t - 1 = 0.
        const cplx u = std::conj(b) / babs;
        const double app = a.at(p, p).real();
        const double aqq = a.at(qq, qq).real();
        const double tau = (aqq - app) / (2.0 * babs);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx su = s * u;

        // Column update of A and Q by G = D(u) R(c, s).
        for (int i = 0; i < n; ++i) {
          const cplx hip = a.at(i, p), hiq = a.at(i, qq);
          a.at(i, p) = c * hip - su * hiq;
          a.at(i, qq) = s * hip + c * u * hiq;
          const cplx qip = q.at(i, p), qiq = q.at(i, qq);
          q.at(i, p) = c * qip - su * qiq;
          q.at(i, qq) = s * qip + c * u * qiq;
        }
        // Row update of A by G*.
        const cplx cu = std::conj(u);
        for (int j = 0; j < n; ++j) {
          const cplx hpj = a.at(p, j), hqj = a.at(qq, j);
          a.at(p, j) = c * hpj - s * cu * hqj;
          a.at(qq, j) = s * hpj + c * cu * hqj;
        }
        a.at(p, qq) = 0.0;
        a.at(qq, p) = 0.0;
        a.at(p, p) = a.at(p, p).real();
        a.at(qq, qq) = a.at(qq, qq).real();
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a.at(i, i).real() < a.at(j, j).real();
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.q = CMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a.at(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.q.at(i, k) = q.at(i, order[k]);
  }
  return out;
}

}  // namespace zpath
