#include "zpath/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zpath/linalg.hpp"
#include "zpath/random.hpp"

namespace zpath {

namespace {

// ||[A, B]|| through matvec access only; the product is never formed.
double est_commutator_norm(const CMatrix& a, const CMatrix& b,
                           std::vector<cplx>* warm) {
  const int n = a.n();
  std::vector<cplx> t(n), u(n);
  LinOpFn apply = [&](const cplx* x, cplx* y) {
    matvec(b, x, t.data());
    matvec(a, t.data(), y);
    matvec(a, x, t.data());
    matvec(b, t.data(), u.data());
    for (int i = 0; i < n; ++i) y[i] -= u[i];
  };
  LinOpFn apply_adj = [&](const cplx* x, cplx* y) {
    matvec_adjoint(a, x, t.data());
    matvec_adjoint(b, t.data(), y);
    matvec_adjoint(b, x, t.data());
    matvec_adjoint(a, t.data(), u.data());
    for (int i = 0; i < n; ++i) y[i] -= u[i];
  };
  return est_linop_norm(n, apply, apply_adj, warm);
}

// ||[M, M*]||; the operator is hermitian, so it is its own adjoint.
double est_normality_defect(const CMatrix& m, std::vector<cplx>* warm) {
  const int n = m.n();
  std::vector<cplx> t(n), u(n);
  LinOpFn apply = [&](const cplx* x, cplx* y) {
    matvec_adjoint(m, x, t.data());
    matvec(m, t.data(), y);
    matvec(m, x, t.data());
    matvec_adjoint(m, t.data(), u.data());
    for (int i = 0; i < n; ++i) y[i] -= u[i];
  };
  return est_linop_norm(n, apply, apply, warm);
}

// ||p(M_1, ..., M_m)|| with monomials applied right to left in ascending
// variable order, matching the formed evaluation.
double est_poly_norm(const MultiPoly& p, const MatrixTuple& m,
                     std::vector<cplx>* warm) {
  const int n = m.empty() ? 0 : m[0].n();
  const int vars = static_cast<int>(m.size());
  std::vector<cplx> w(n), t(n);
  LinOpFn apply = [&](const cplx* x, cplx* y) {
    std::fill(y, y + n, cplx(0.0));
    for (const auto& [exps, c] : p.terms()) {
      std::copy(x, x + n, w.begin());
      for (int k = vars - 1; k >= 0; --k)
        for (unsigned e = 0; e < exps[k]; ++e) {
          matvec(m[k], w.data(), t.data());
          std::swap(w, t);
        }
      for (int i = 0; i < n; ++i) y[i] += c * w[i];
    }
  };
  LinOpFn apply_adj = [&](const cplx* x, cplx* y) {
    std::fill(y, y + n, cplx(0.0));
    for (const auto& [exps, c] : p.terms()) {
      std::copy(x, x + n, w.begin());
      for (int k = 0; k < vars; ++k)
        for (unsigned e = 0; e < exps[k]; ++e) {
          matvec_adjoint(m[k], w.data(), t.data());
          std::swap(w, t);
        }
      const cplx cc = std::conj(c);
      for (int i = 0; i < n; ++i) y[i] += cc * w[i];
    }
  };
  return est_linop_norm(n, apply, apply_adj, warm);
}

// Warm-start vectors for the per-quantity estimator chains of one segment.
struct WarmBank {
  std::vector<std::vector<cplx>> contraction;  // per component
  std::vector<std::vector<cplx>> normality;    // per component
  std::vector<std::vector<cplx>> commutator;   // per component pair
  std::vector<std::vector<cplx>> poly;         // per polynomial

  explicit WarmBank(int m, int polys)
      : contraction(m), normality(m),
        commutator(static_cast<size_t>(m) * (m - 1) / 2), poly(polys) {}
};

struct InvariantMaxima {
  double commutator = 0.0;
  double normality = 0.0;
  double contraction_excess = 0.0;
  double poly = 0.0;
};

void measure_tuple(const MatrixTuple& m, SetFamily family,
                   const MultiPolySystem* system, WarmBank& bank,
                   InvariantMaxima& out) {
  const int mm = static_cast<int>(m.size());
  for (int j = 0; j < mm; ++j) {
    const double norm = est_operator_norm(m[j], &bank.contraction[j]);
    out.contraction_excess = std::max(out.contraction_excess, norm - 1.0);
    if (family == SetFamily::Cube) {
      const CMatrix defect = m[j] - m[j].adjoint();
      out.normality = std::max(
          out.normality, est_operator_norm(defect, &bank.normality[j]));
    } else {
      out.normality = std::max(
          out.normality, est_normality_defect(m[j], &bank.normality[j]));
    }
  }
  int pair = 0;
  for (int j = 0; j < mm; ++j)
    for (int k = j + 1; k < mm; ++k, ++pair)
      out.commutator = std::max(
          out.commutator, est_commutator_norm(m[j], m[k], &bank.commutator[pair]));
  if (system)
    for (size_t p = 0; p < system->polys.size(); ++p)
      out.poly = std::max(out.poly,
                          est_poly_norm(system->polys[p], m, &bank.poly[p]));
}

}  // namespace

PathCertificate certify_path(const MatrixPath& path, const MatrixTuple& x,
                             const MatrixTuple& y,
                             const MultiPolySystem* system, double epsilon,
                             SetFamily family, const CertifyConfig& cfg,
                             const ToleranceConfig& tol,
                             const std::vector<BoundCheck>* diagnostics) {
  const int m = static_cast<int>(x.size());
  const int n = tuple_size(x, "certify_path");
  if (static_cast<int>(y.size()) != m || tuple_size(y, "certify_path") != n)
    throw Error(ErrorCode::ShapeMismatch, "certify_path: endpoint shapes differ");
  if (path.m() != m || path.n() != n)
    throw Error(ErrorCode::ShapeMismatch, "certify_path: path/endpoint shapes differ");
  if (system && system->vars != m)
    throw Error(ErrorCode::ShapeMismatch, "certify_path: constraint arity mismatch");
  if (cfg.samples < 3)
    throw Error(ErrorCode::BadParameter, "certify_path: need at least 3 samples");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::BadParameter, "certify_path: bad epsilon");

  PathCertificate cert;
  cert.epsilon = epsilon;
  cert.family = family;
  cert.poly_gate = cfg.poly_gate > 0.0 ? cfg.poly_gate : tol.tol_member;
  cert.tolerances = tol;
  cert.seed = cfg.seed;
  if (diagnostics) cert.checks = *diagnostics;

  const int segs = static_cast<int>(path.segment_count());
  const int per = std::max((cfg.samples - 1 + segs - 1) / segs, 64);
  cert.samples = segs * per + 1;

  const int polys = system ? static_cast<int>(system->polys.size()) : 0;
  InvariantMaxima inv;
  double exp_excess = 0.0;

  for (const PathSegment& seg : path.segments()) {
    if (const auto* c = std::get_if<ConjugationSegment>(&seg)) {
      // Conjugation preserves commutators, normality defects, contraction
      // norms, and polynomial values exactly (the sampled matrices are all
      // unitarily equivalent to the base), so those are measured once.
      WarmBank bank(m, polys);
      measure_tuple(c->base, family, system, bank, inv);

      // Ball distances vary with t; measure them in the exponent eigenbasis
      // where each sample is an entrywise phase scaling.
      std::vector<CMatrix> b(m), r(m);
      for (int j = 0; j < m; ++j) {
        b[j] = conj_transpose_mul(c->qk, mul(c->base[j], c->qk));
        r[j] = conj_transpose_mul(c->qk, mul(y[j], c->qk));
      }
      double theta_max = 0.0;
      for (double th : c->theta) theta_max = std::max(theta_max, std::abs(th));

      std::vector<std::vector<cplx>> warm_ball(m);
      std::vector<cplx> ph(n);
      CMatrix d(n);
      for (int i = 0; i <= per; ++i) {
        const double u = static_cast<double>(i) / per;
        const double s = c->a + (c->b - c->a) * u;
        for (int k = 0; k < n; ++k) ph[k] = std::polar(1.0, s * c->theta[k]);

        double em = 0.0;
        for (int k = 0; k < n; ++k)
          em = std::max(em, 2.0 * std::abs(std::sin(s * c->theta[k] / 2.0)));
        const double arg =
            std::min(std::abs(s) * theta_max / 2.0, std::numbers::pi / 2.0);
        exp_excess = std::max(exp_excess, em - 2.0 * std::sin(arg));

        for (int j = 0; j < m; ++j) {
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              d.at(p, q) = ph[p] * b[j].at(p, q) * std::conj(ph[q]) - r[j].at(p, q);
          cert.max_ball_distance =
              std::max(cert.max_ball_distance, est_operator_norm(d, &warm_ball[j]));
        }
      }

      // The frame is only as good as the cached eigendecomposition of the
      // exponent; spot-check it against literal samples.
      for (double u : {0.0, 0.5, 1.0}) {
        const MatrixTuple lit = segment_sample(seg, u);
        const double s = c->a + (c->b - c->a) * u;
        for (int k = 0; k < n; ++k) ph[k] = std::polar(1.0, s * c->theta[k]);
        for (int j = 0; j < m; ++j) {
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              d.at(p, q) = ph[p] * b[j].at(p, q) * std::conj(ph[q]);
          const CMatrix rebuilt = mul_conj_transpose(mul(c->qk, d), c->qk);
          cert.frame_defect = std::max(
              cert.frame_defect, est_operator_norm(lit[j] - rebuilt));
        }
      }
    } else {
      const auto& l = std::get<LinearSegment>(seg);
      WarmBank bank(m, polys);
      std::vector<std::vector<cplx>> warm_ball(m);
      MatrixTuple cur(m, CMatrix(n));
      for (int i = 0; i <= per; ++i) {
        const double u = static_cast<double>(i) / per;
        for (int j = 0; j < m; ++j) {
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              cur[j].at(p, q) =
                  (1.0 - u) * l.start[j].at(p, q) + u * l.end[j].at(p, q);
          cert.max_ball_distance = std::max(
              cert.max_ball_distance,
              est_operator_norm(cur[j] - y[j], &warm_ball[j]));
        }
        measure_tuple(cur, family, system, bank, inv);
      }
      // Sampling a linear segment is the same convex combination the
      // measurements use; record any drift all the same.
      for (double u : {0.0, 0.5, 1.0}) {
        const MatrixTuple lit = segment_sample(seg, u);
        for (int j = 0; j < m; ++j) {
          CMatrix diff = lit[j];
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              diff.at(p, q) -=
                  (1.0 - u) * l.start[j].at(p, q) + u * l.end[j].at(p, q);
          cert.frame_defect = std::max(cert.frame_defect, diff.max_abs());
        }
      }
    }
  }

  cert.max_commutator = inv.commutator;
  cert.max_normality = inv.normality;
  cert.max_contraction_excess = std::max(0.0, inv.contraction_excess);
  cert.max_poly_residual = inv.poly;
  cert.max_ball_excess = std::max(0.0, cert.max_ball_distance - epsilon);

  const MatrixTuple at0 = path.sample(0.0), at1 = path.sample(1.0);
  for (int j = 0; j < m; ++j) {
    cert.endpoint_residual_start =
        std::max(cert.endpoint_residual_start, est_operator_norm(at0[j] - x[j]));
    cert.endpoint_residual_end =
        std::max(cert.endpoint_residual_end, est_operator_norm(at1[j] - y[j]));
  }

  const bool frame_ok = cert.frame_defect <= 100.0 * tol.tol_recon;
  cert.checks.push_back({"exp_distance_bound", tol.tol_recon, exp_excess,
                         exp_excess <= tol.tol_recon});
  cert.checks.push_back(
      {"frame_consistency", 100.0 * tol.tol_recon, cert.frame_defect, frame_ok});

  cert.pass = cert.endpoint_residual_start <= cfg.endpoint_gate &&
              cert.endpoint_residual_end <= cfg.endpoint_gate &&
              cert.max_ball_excess <= 0.0 &&
              cert.max_poly_residual <= cert.poly_gate &&
              cert.max_commutator <= tol.tol_commute &&
              cert.max_normality <= tol.tol_member &&
              cert.max_contraction_excess <= tol.tol_member && frame_ok;
  return cert;
}

SweepReport uniformity_sweep(const MultiPolySystem& system, const ZeroSet& z,
                             double epsilon, const std::vector<int>& dims,
                             uint64_t seed, double perturbation,
                             double cpa_delta, const ToleranceConfig& tol) {
  if (dims.empty())
    throw Error(ErrorCode::BadParameter, "uniformity_sweep: no dimensions");

  bool complex_points = false;
  for (const auto& pt : z.points)
    for (const cplx& v : pt)
      if (v.imag() != 0.0) complex_points = true;
  const SetFamily family = complex_points ? SetFamily::Disk : SetFamily::Cube;

  SweepReport report;
  report.epsilon = epsilon;
  report.cpa_delta = cpa_delta;
  report.seed = seed;
  report.perturbation =
      perturbation > 0.0
          ? perturbation
          : delta_budget(z, epsilon, z.vars, 1.0).delta;

  for (int n : dims) {
    SweepRow row;
    row.n = n;
    row.delta_used = report.perturbation;
    try {
      Rng rng(seed ^ (static_cast<uint64_t>(n) * 0x9e3779b97f4a7c15ull));
      const MatrixTuple y = random_member(z, n, rng, family == SetFamily::Cube).tuple;
      const CMatrix k0 = random_skew(n, rng, report.perturbation);
      const CMatrix u = unitary_exp(k0, 1.0, tol);
      MatrixTuple x(y.size());
      for (size_t j = 0; j < y.size(); ++j)
        x[j] = mul_conj_transpose(mul(u, y[j]), u);
      row.input_distance = metric_est(x, y);

      const PathResult res =
          family == SetFamily::Cube
              ? connect_cube(x, y, system, z, epsilon, 1.0, tol)
              : connect_disk(x, y, system, z, epsilon, 1.0, tol);
      CertifyConfig cfg;
      cfg.seed = seed;
      const PathCertificate cert = certify_path(
          res.path, x, y, &system, epsilon, family, cfg, tol, &res.diagnostics);

      row.success = cert.pass;
      row.margin_ball = epsilon - cert.max_ball_distance;
      row.margin_poly = cert.poly_gate - cert.max_poly_residual;
      row.margin_commutator = tol.tol_commute - cert.max_commutator;
      row.margin_endpoint =
          cfg.endpoint_gate - std::max(cert.endpoint_residual_start,
                                       cert.endpoint_residual_end);
      for (const BoundCheck& chk : cert.checks) {
        if (chk.name == "k_vs_2asin_eps4") {
          row.k_norm = chk.measured;
          row.margin_k_eps4 = chk.claimed - chk.measured;
        } else if (chk.name == "k_vs_2asin_eps2") {
          row.margin_k_eps2 = chk.claimed - chk.measured;
        }
      }

      const MatrixTuple cpa_input = random_cube_tuple(n, z.vars, rng);
      const CpaResult cpa = cpa_hermitian(cpa_input, cpa_delta, tol);
      row.cpa_max_degree = cpa.max_degree;
      row.cpa_distance = cpa.achieved_distance;
    } catch (const Error& e) {
      row.success = false;
      row.failure = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace zpath
