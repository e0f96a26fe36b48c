#include "zpath/random.hpp"

#include <cmath>
#include <numbers>

#include "zpath/linalg.hpp"

namespace zpath {

CMatrix random_unitary(int n, Rng& rng) {
  CMatrix u = CMatrix::identity(n);
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double c = std::cos(theta), s = std::sin(theta);
      const cplx e = std::polar(1.0, phi);
      // Right-multiply by the rotation acting on columns i, j.
      for (int row = 0; row < n; ++row) {
        const cplx ui = u.at(row, i), uj = u.at(row, j);
        u.at(row, i) = c * ui + s * e * uj;
        u.at(row, j) = -s * std::conj(e) * ui + c * uj;
      }
    }
  return u;
}

CMatrix random_skew(int n, Rng& rng, double norm) {
  CMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a.at(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  CMatrix k = a;
  k -= a.adjoint();
  k *= 0.5;
  const double cur = est_operator_norm(k);
  if (cur > 0.0) k *= (norm / cur);
  return k;
}

CMatrix random_hermitian(int n, Rng& rng, double scale) {
  CMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a.at(i, j) = cplx(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
  return hermitian_part(a);
}

SeededMember random_member(const ZeroSet& z, int n, Rng& rng, bool hermitize) {
  const size_t m = z.vars;
  SeededMember out;
  out.row_points.resize(n);
  for (int k = 0; k < n; ++k)
    out.row_points[k] = rng.index(static_cast<int>(z.points.size()));
  CMatrix u = random_unitary(n, rng);
  out.tuple.resize(m);
  for (size_t j = 0; j < m; ++j) {
    std::vector<cplx> d(n);
    for (int k = 0; k < n; ++k) d[k] = z.points[out.row_points[k]][j];
    CMatrix comp = mul_conj_transpose(mul(u, CMatrix::diag(d)), u);
    out.tuple[j] = hermitize ? hermitian_part(comp) : std::move(comp);
  }
  return out;
}

MatrixTuple random_cube_tuple(int n, int m, Rng& rng) {
  std::vector<std::vector<cplx>> rows(n, std::vector<cplx>(m));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < m; ++j) rows[k][j] = rng.uniform(-1.0, 1.0);
  CMatrix u = random_unitary(n, rng);
  MatrixTuple x(m);
  for (int j = 0; j < m; ++j) {
    std::vector<cplx> d(n);
    for (int k = 0; k < n; ++k) d[k] = rows[k][j];
    x[j] = hermitian_part(mul_conj_transpose(mul(u, CMatrix::diag(d)), u));
  }
  return x;
}

}  // namespace zpath
