#include "zpath/correction.hpp"

#include <cmath>
#include <limits>

namespace zpath {

namespace {

constexpr double kBoundSlack = 1e-9;

void require_unitary(const CMatrix& w, const ToleranceConfig& tol,
                     const char* where) {
  require_finite(w, where);
  CMatrix gram = conj_transpose_mul(w, w);
  gram -= CMatrix::identity(w.n());
  if (gram.frobenius() >
      tol.tol_unitary * std::sqrt(static_cast<double>(w.n())) * 10.0)
    throw Error(ErrorCode::NotUnitary, std::string(where) + ": W not unitary");
}

CMatrix block_polar_adjoint(const OPU& opu, const CMatrix& w,
                            const ToleranceConfig& tol) {
  std::vector<PolarResult> parts = projective_polar(opu, w, tol);
  CMatrix v(w.n());
  for (const PolarResult& p : parts) v += p.v;
  return v.adjoint();
}

}  // namespace

CorrectionResult commuting_correction(const CMatrix& w, const CMatrix& d,
                                      const OPU& opu,
                                      const ToleranceConfig& tol) {
  require_unitary(w, tol, "commuting_correction");
  require_finite(d, "commuting_correction");
  require_square_same(w, d, "commuting_correction");
  validate_opu(opu, tol);
  if (opu.labels.empty())
    throw Error(ErrorCode::InvalidOPU, "commuting_correction: OPU has no labels");

  CMatrix rebuilt(d.n());
  for (size_t j = 0; j < opu.projectors.size(); ++j) {
    if (opu.labels[j].size() != 1)
      throw Error(ErrorCode::InvalidOPU,
                  "commuting_correction: labels must be scalar");
    CMatrix scaled = opu.projectors[j];
    scaled *= opu.labels[j][0];
    rebuilt += scaled;
  }
  if (est_operator_norm(d - rebuilt) > tol.tol_member * 10.0)
    throw Error(ErrorCode::InvalidOPU,
                "commuting_correction: labels do not reproduce D");

  const size_t r = opu.projectors.size();
  CorrectionResult out;
  out.residual = est_operator_norm(mul_conj_transpose(mul(w, d), w) - d);

  if (r == 1) {
    out.z = w.adjoint();
    out.bound_constant = 0.0;
  } else {
    double s = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < r; ++a)
      for (size_t b = a + 1; b < r; ++b)
        s = std::min(s, std::abs(opu.labels[a][0] - opu.labels[b][0]));
    out.z = block_polar_adjoint(opu, w, tol);
    out.bound_constant = 3.0 * static_cast<double>(r) *
                         static_cast<double>(r - 1) / s;
  }

  out.achieved = est_operator_norm(CMatrix::identity(w.n()) - mul(w, out.z));
  out.z_commutator = est_operator_norm(commutator(out.z, d));
  out.bound_holds =
      out.achieved <= out.bound_constant * out.residual + kBoundSlack;
  return out;
}

CorrectionResult refined_commuting_correction(const CMatrix& w,
                                              const MatrixTuple& d,
                                              const OPU& refined,
                                              const ToleranceConfig& tol) {
  require_unitary(w, tol, "refined_commuting_correction");
  const int n = tuple_size(d, "refined_commuting_correction");
  if (w.n() != n)
    throw Error(ErrorCode::ShapeMismatch, "refined_commuting_correction: sizes");
  validate_opu(refined, tol);

  const size_t m = d.size();
  JointSpectrum js = joint_diagonalize(d, tol);

  // Per component: distinct eigenvalues and their minimal gap.
  double max_ck = 0.0;
  for (size_t j = 0; j < m; ++j) {
    std::vector<cplx> vals;
    for (int k = 0; k < n; ++k) vals.push_back(js.lambda[k][j]);
    std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    std::vector<cplx> reps;
    for (const cplx& v : vals)
      if (reps.empty() || std::abs(v - reps.back()) > tol.tol_cluster)
        reps.push_back(v);
    const size_t rk = reps.size();
    if (rk < 2) continue;
    double sk = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < rk; ++a)
      for (size_t b = a + 1; b < rk; ++b)
        sk = std::min(sk, std::abs(reps[a] - reps[b]));
    max_ck = std::max(max_ck, 3.0 * static_cast<double>(rk) *
                                  static_cast<double>(rk - 1) / sk);
  }

  CorrectionResult out;
  out.bound_constant = 2.0 * std::sqrt(2.0) * static_cast<double>(m) *
                       static_cast<double>(refined.projectors.size()) * max_ck;
  out.z = block_polar_adjoint(refined, w, tol);
  for (size_t j = 0; j < m; ++j) {
    out.residual = std::max(
        out.residual,
        est_operator_norm(mul_conj_transpose(mul(w, d[j]), w) - d[j]));
    out.z_commutator =
        std::max(out.z_commutator, est_operator_norm(commutator(out.z, d[j])));
  }
  out.achieved = est_operator_norm(CMatrix::identity(n) - mul(w, out.z));
  out.bound_holds =
      out.achieved <= out.bound_constant * out.residual + kBoundSlack;
  return out;
}

}  // namespace zpath
