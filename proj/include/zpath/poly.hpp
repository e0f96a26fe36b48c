#pragma once

#include <map>
#include <vector>

#include "zpath/tuple.hpp"

namespace zpath {

// Sparse multivariate polynomial with complex coefficients.  Terms are keyed
// by exponent vectors (one entry per variable) in a sorted map, which keeps
// every traversal deterministic.
class MultiPoly {
 public:
  using Terms = std::map<std::vector<unsigned>, cplx>;

  explicit MultiPoly(int vars = 0) : vars_(vars) {}
  static MultiPoly constant(int vars, cplx c);
  static MultiPoly variable(int vars, int k);

  int vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree_in(int k) const;
  int max_variable_degree() const;

  void add_term(std::vector<unsigned> exps, cplx c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(cplx s) const;

  cplx eval(const std::vector<cplx>& point) const;

 private:
  int vars_ = 0;
  Terms terms_;
};

struct MultiPolySystem {
  int vars = 0;
  std::vector<MultiPoly> polys;
};

// p(X_1, ..., X_m) with matrix arguments, monomials evaluated in ascending
// variable order.  Component powers are cached per call.
CMatrix eval_poly(const MultiPoly& p, const MatrixTuple& x);

// Univariate annihilators of the deduplicated k-th coordinates of a point
// list: p_k(t) = prod over distinct values y of (t - y).
std::vector<MultiPoly> coordinate_polynomials(
    const std::vector<std::vector<cplx>>& points, double dedup_tol);

struct RealifiedSystem {
  MultiPolySystem system;                        // 2m real variables
  std::vector<std::vector<cplx>> zero_points;    // images under z -> (Re z, Im z)
};

// Substitutes z_k = x_k + i x_{m+k} into every polynomial and splits the
// result into real- and imaginary-part polynomials with real coefficients.
RealifiedSystem realify_system(const MultiPolySystem& system,
                               const std::vector<std::vector<cplx>>& zero_points);

}  // namespace zpath
