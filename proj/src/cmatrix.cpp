#include "zpath/cmatrix.hpp"

#include <cmath>

namespace zpath {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotSkewHermitian: return "NotSkewHermitian";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotCrossCommuting: return "NotCrossCommuting";
    case ErrorCode::BranchEdge: return "BranchEdge";
    case ErrorCode::OddComponentCount: return "OddComponentCount";
    case ErrorCode::NotAZero: return "NotAZero";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::EmptyZeroSet: return "EmptyZeroSet";
    case ErrorCode::ClusterOverlap: return "ClusterOverlap";
    case ErrorCode::InvalidOPU: return "InvalidOPU";
    case ErrorCode::NotCommutingOPUs: return "NotCommutingOPUs";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BadDelta: return "BadDelta";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::NotNearlyMember: return "NotNearlyMember";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorCode::SpectraOffZeroSet: return "SpectraOffZeroSet";
    case ErrorCode::NoNearbyZero: return "NoNearbyZero";
    case ErrorCode::DiscontinuousJoin: return "DiscontinuousJoin";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diag(const std::vector<cplx>& d) {
  CMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.n_; ++i) m.at(i, i) = d[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

double CMatrix::frobenius() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

bool CMatrix::is_finite() const {
  for (const cplx& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& z : a_) z *= s;
  return *this;
}

// The multiply kernels below spell out real/imag arithmetic: this keeps the
// inner loops free of the library's NaN-recovery complex multiply and lets
// the compiler vectorize them.
CMatrix mul(const CMatrix& a, const CMatrix& b) {
  const int n = a.n();
  CMatrix c(n);
  for (int i = 0; i < n; ++i) {
    cplx* crow = c.data() + static_cast<size_t>(i) * n;
    for (int k = 0; k < n; ++k) {
      const cplx aik = a.at(i, k);
      if (aik == cplx(0.0)) continue;
      const cplx* brow = b.data() + static_cast<size_t>(k) * n;
      const cplx av = aik;
      for (int j = 0; j < n; ++j) {
        const double ar = av.real(), ai = av.imag();
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] += cplx(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
  return c;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return mul(a, b); }

void matvec(const CMatrix& a, const cplx* x, cplx* y) {
  const int n = a.n();
  for (int i = 0; i < n; ++i) {
    const cplx* row = a.data() + static_cast<size_t>(i) * n;
    double sr = 0.0, si = 0.0;
    for (int j = 0; j < n; ++j) {
      const double ar = row[j].real(), ai = row[j].imag();
      const double xr = x[j].real(), xi = x[j].imag();
      sr += ar * xr - ai * xi;
      si += ar * xi + ai * xr;
    }
    y[i] = cplx(sr, si);
  }
}

void matvec_adjoint(const CMatrix& a, const cplx* x, cplx* y) {
  const int n = a.n();
  for (int i = 0; i < n; ++i) y[i] = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx* row = a.data() + static_cast<size_t>(j) * n;
    const double xr = x[j].real(), xi = x[j].imag();
    for (int i = 0; i < n; ++i) {
      // conj(row[i]) * x[j]
      const double ar = row[i].real(), ai = -row[i].imag();
      y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
  }
}

CMatrix conj_transpose_mul(const CMatrix& a, const CMatrix& b) {
  const int n = a.n();
  CMatrix c(n);
  for (int k = 0; k < n; ++k) {
    const cplx* arow = a.data() + static_cast<size_t>(k) * n;
    const cplx* brow = b.data() + static_cast<size_t>(k) * n;
    for (int i = 0; i < n; ++i) {
      const double ar = arow[i].real(), ai = -arow[i].imag();
      cplx* crow = c.data() + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] += cplx(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
  return c;
}

CMatrix mul_conj_transpose(const CMatrix& a, const CMatrix& b) {
  const int n = a.n();
  CMatrix c(n);
  for (int i = 0; i < n; ++i) {
    const cplx* arow = a.data() + static_cast<size_t>(i) * n;
    cplx* crow = c.data() + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const cplx* brow = b.data() + static_cast<size_t>(j) * n;
      double sr = 0.0, si = 0.0;
      for (int k = 0; k < n; ++k) {
        const double ar = arow[k].real(), ai = arow[k].imag();
        const double br = brow[k].real(), bi = -brow[k].imag();
        sr += ar * br - ai * bi;
        si += ar * bi + ai * br;
      }
      crow[j] = cplx(sr, si);
    }
  }
  return c;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  double s = 0.0;
  const int n = a.n();
  for (int i = 0; i < n * n; ++i) s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  CMatrix c = mul(a, b);
  c -= mul(b, a);
  return c;
}

CMatrix hermitian_part(const CMatrix& a) {
  CMatrix r = a;
  r += a.adjoint();
  r *= 0.5;
  return r;
}

CMatrix anti_hermitian_imag(const CMatrix& a) {
  CMatrix r = a;
  r -= a.adjoint();
  r *= cplx(0.0, -0.5);
  return r;
}

void require_square_same(const CMatrix& a, const CMatrix& b, const char* where) {
  if (a.n() != b.n())
    throw Error(ErrorCode::ShapeMismatch, std::string(where) + ": size mismatch");
}

void require_finite(const CMatrix& a, const char* where) {
  if (!a.is_finite())
    throw Error(ErrorCode::NonFinite, std::string(where) + ": non-finite entry");
}

}  // namespace zpath
