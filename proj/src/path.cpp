#include "zpath/path.hpp"

#include <cmath>

#include "zpath/linalg.hpp"

namespace zpath {

ConjugationSegment make_conjugation(MatrixTuple base, CMatrix k, double a,
                                    double b, const ToleranceConfig& tol) {
  const int n = tuple_size(base, "make_conjugation");
  require_finite(k, "make_conjugation");
  if (k.n() != n)
    throw Error(ErrorCode::ShapeMismatch, "make_conjugation: exponent size");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::BadParameter, "make_conjugation: bad interval");
  const double fro = k.frobenius();
  if (frobenius_distance(k, cplx(-1.0) * k.adjoint()) >
      tol.tol_member * std::max(1.0, fro))
    throw Error(ErrorCode::NotSkewHermitian, "make_conjugation: K not skew");

  ConjugationSegment seg;
  seg.base = std::move(base);
  seg.k = std::move(k);
  seg.a = a;
  seg.b = b;
  CMatrix h = seg.k;
  h *= cplx(0.0, -1.0);
  EigenDecomposition e = hermitian_eigen(h, tol);
  seg.qk = std::move(e.q);
  seg.theta = std::move(e.values);
  return seg;
}

ConjugationSegment retarget_conjugation(const ConjugationSegment& seg,
                                        MatrixTuple new_base) {
  ConjugationSegment out = seg;
  out.base = std::move(new_base);
  return out;
}

namespace {

MatrixTuple conjugation_sample(const ConjugationSegment& seg, double u) {
  const double s = seg.a + (seg.b - seg.a) * u;
  if (s == 0.0) return seg.base;
  const int n = seg.qk.n();
  // U = Q diag(exp(i s theta)) Q*.
  CMatrix qe = seg.qk;
  for (int c = 0; c < n; ++c) {
    const cplx phase = std::polar(1.0, s * seg.theta[c]);
    for (int i = 0; i < n; ++i) qe.at(i, c) *= phase;
  }
  const CMatrix u_mat = mul_conj_transpose(qe, seg.qk);
  MatrixTuple out(seg.base.size());
  for (size_t j = 0; j < seg.base.size(); ++j)
    out[j] = mul_conj_transpose(mul(u_mat, seg.base[j]), u_mat);
  return out;
}

}  // namespace

MatrixTuple segment_sample(const PathSegment& seg, double u) {
  if (u < -1e-12 || u > 1.0 + 1e-12)
    throw Error(ErrorCode::BadParameter, "segment_sample: parameter outside [0,1]");
  u = std::clamp(u, 0.0, 1.0);
  if (const auto* lin = std::get_if<LinearSegment>(&seg)) {
    if (u == 0.0) return lin->start;
    if (u == 1.0) return lin->end;
    MatrixTuple out(lin->start.size());
    for (size_t j = 0; j < out.size(); ++j) {
      out[j] = lin->start[j];
      out[j] *= cplx(1.0 - u);
      CMatrix e = lin->end[j];
      e *= cplx(u);
      out[j] += e;
    }
    return out;
  }
  return conjugation_sample(std::get<ConjugationSegment>(seg), u);
}

namespace {

void segment_shape(const PathSegment& seg, int& n, int& m) {
  if (const auto* lin = std::get_if<LinearSegment>(&seg)) {
    n = tuple_size(lin->start, "MatrixPath");
    if (lin->start.size() != lin->end.size() ||
        tuple_size(lin->end, "MatrixPath") != n)
      throw Error(ErrorCode::ShapeMismatch, "MatrixPath: segment endpoint shapes");
    m = static_cast<int>(lin->start.size());
  } else {
    const auto& c = std::get<ConjugationSegment>(seg);
    n = tuple_size(c.base, "MatrixPath");
    m = static_cast<int>(c.base.size());
  }
}

}  // namespace

MatrixPath::MatrixPath(std::vector<PathSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty())
    throw Error(ErrorCode::BadParameter, "MatrixPath: no segments");
  segment_shape(segments_.front(), n_, m_);
  for (const PathSegment& seg : segments_) {
    int n = 0, m = 0;
    segment_shape(seg, n, m);
    if (n != n_ || m != m_)
      throw Error(ErrorCode::ShapeMismatch, "MatrixPath: mixed segment shapes");
  }
}

MatrixTuple MatrixPath::sample(double t) const {
  if (t < -1e-12 || t > 1.0 + 1e-12)
    throw Error(ErrorCode::BadParameter, "MatrixPath::sample: t outside [0,1]");
  t = std::clamp(t, 0.0, 1.0);
  const double scaled = t * static_cast<double>(segments_.size());
  int idx = std::min(static_cast<int>(scaled),
                     static_cast<int>(segments_.size()) - 1);
  return segment_sample(segments_[idx], scaled - idx);
}

MatrixPath flat_path(const MatrixTuple& x, const MatrixTuple& y,
                     const ToleranceConfig& tol) {
  const int n = tuple_size(x, "flat_path");
  if (x.size() != y.size() || tuple_size(y, "flat_path") != n)
    throw Error(ErrorCode::ShapeMismatch, "flat_path: shape mismatch");
  const double gate = tol.tol_commute * std::sqrt(static_cast<double>(n)) * 10.0;
  for (size_t j = 0; j < x.size(); ++j)
    for (size_t k = 0; k < y.size(); ++k)
      if (commutator(x[j], y[k]).frobenius() > gate)
        throw Error(ErrorCode::NotCrossCommuting,
                    "flat_path: endpoints do not cross-commute");
  return MatrixPath({LinearSegment{x, y}});
}

MatrixPath concat(const MatrixPath& a, const MatrixPath& b,
                  const ToleranceConfig& tol) {
  if (a.n() != b.n() || a.m() != b.m())
    throw Error(ErrorCode::ShapeMismatch, "concat: path shapes differ");
  const double gap = metric_est(a.sample(1.0), b.sample(0.0));
  if (gap > tol.tol_recon)
    throw Error(ErrorCode::DiscontinuousJoin, "concat: junction mismatch");
  std::vector<PathSegment> segs = a.segments();
  for (const PathSegment& s : b.segments()) segs.push_back(s);
  return MatrixPath(std::move(segs));
}

}  // namespace zpath
