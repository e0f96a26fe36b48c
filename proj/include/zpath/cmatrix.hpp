#pragma once

#include <vector>

#include "zpath/types.hpp"

namespace zpath {

// Dense square complex matrix, row major, value semantics.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

  static CMatrix identity(int n);
  static CMatrix diag(const std::vector<cplx>& d);

  int n() const { return n_; }
  cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const cplx& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  CMatrix adjoint() const;
  cplx trace() const;
  double frobenius() const;
  double max_abs() const;
  bool is_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

CMatrix mul(const CMatrix& a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

// y = A x
void matvec(const CMatrix& a, const cplx* x, cplx* y);
// y = A* x
void matvec_adjoint(const CMatrix& a, const cplx* x, cplx* y);

// C = A B restricted helpers used by the eigensolver and pinching code.
CMatrix conj_transpose_mul(const CMatrix& a, const CMatrix& b);  // A* B
CMatrix mul_conj_transpose(const CMatrix& a, const CMatrix& b);  // A B*

double frobenius_distance(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix hermitian_part(const CMatrix& a);       // (A + A*) / 2
CMatrix anti_hermitian_imag(const CMatrix& a);  // (A - A*) / (2i), hermitian

void require_square_same(const CMatrix& a, const CMatrix& b, const char* where);
void require_finite(const CMatrix& a, const char* where);

}  // namespace zpath
