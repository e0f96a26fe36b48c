#include "zpath/tuple.hpp"

#include "zpath/linalg.hpp"

namespace zpath {

int tuple_size(const MatrixTuple& x, const char* where) {
  if (x.empty())
    throw Error(ErrorCode::ShapeMismatch, std::string(where) + ": empty tuple");
  const int n = x.front().n();
  for (const CMatrix& c : x) {
    if (c.n() != n)
      throw Error(ErrorCode::ShapeMismatch,
                  std::string(where) + ": mixed component sizes");
    require_finite(c, where);
  }
  return n;
}

double metric(const MatrixTuple& x, const MatrixTuple& y,
              const ToleranceConfig& tol) {
  if (x.size() != y.size())
    throw Error(ErrorCode::ShapeMismatch, "metric: tuple length mismatch");
  tuple_size(x, "metric");
  tuple_size(y, "metric");
  double d = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    require_square_same(x[j], y[j], "metric");
    d = std::max(d, operator_norm(x[j] - y[j], tol));
  }
  return d;
}

double metric_est(const MatrixTuple& x, const MatrixTuple& y) {
  double d = 0.0;
  for (size_t j = 0; j < x.size(); ++j)
    d = std::max(d, est_operator_norm(x[j] - y[j]));
  return d;
}

MatrixTuple partition(const MatrixTuple& x) {
  tuple_size(x, "partition");
  const size_t m = x.size();
  MatrixTuple s(2 * m);
  for (size_t j = 0; j < m; ++j) {
    s[j] = hermitian_part(x[j]);
    s[m + j] = anti_hermitian_imag(x[j]);
  }
  return s;
}

MatrixTuple juncture(const MatrixTuple& s) {
  if (s.size() % 2 != 0)
    throw Error(ErrorCode::OddComponentCount,
                "juncture: component count must be even");
  tuple_size(s, "juncture");
  const size_t m = s.size() / 2;
  MatrixTuple x(m);
  for (size_t j = 0; j < m; ++j) {
    x[j] = s[j];
    x[j] += cplx(0.0, 1.0) * s[m + j];
  }
  return x;
}

}  // namespace zpath
