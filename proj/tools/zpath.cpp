// Command-line front end: generate members, precondition by spectral
// clustering, connect member pairs with certified paths, re-certify stored
// paths, and run the size-uniformity sweep.
//
// Exit codes: 0 success/certificate pass, 1 I/O or malformed data, 2 failed
// membership, 3 bad parameter, 4 spectral matching failure, 5 logarithm
// branch edge, 6 certificate verdict fail.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "zpath/certify.hpp"
#include "zpath/io.hpp"
#include "zpath/random.hpp"

namespace {

using namespace zpath;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::IoError:
    case ErrorCode::NonFinite:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::OddComponentCount:
      return 1;
    case ErrorCode::NotMember:
    case ErrorCode::NotNearlyMember:
    case ErrorCode::NotHermitian:
    case ErrorCode::NotNormal:
    case ErrorCode::NotCommuting:
    case ErrorCode::NotCrossCommuting:
    case ErrorCode::NotAZero:
      return 2;
    case ErrorCode::DeltaTooLarge:
    case ErrorCode::SpectraOffZeroSet:
    case ErrorCode::NoNearbyZero:
      return 4;
    case ErrorCode::BranchEdge:
      return 5;
    default:
      return 3;
  }
}

bool all_points_real(const ZeroSet& z) {
  for (const auto& pt : z.points)
    for (const cplx& v : pt)
      if (v.imag() != 0.0) return false;
  return true;
}

CMatrix rebuild_component(const CMatrix& q, const std::vector<cplx>& values) {
  const int n = q.n();
  CMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      cplx sum = 0.0;
      for (int k = 0; k < n; ++k)
        sum += q.at(i, k) * values[k] * std::conj(q.at(l, k));
      out.at(i, l) = sum;
    }
  return out;
}

struct GenArgs {
  int n = 4;
  int m = 0;
  std::string zeros;
  uint64_t seed = 1;
  double perturb = 0.0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const ToleranceConfig tol;
  const ConstraintData data = load_constraints(a.zeros, tol);
  if (a.m != 0 && a.m != data.system.vars)
    throw Error(ErrorCode::BadParameter,
                "--m disagrees with the constraint file's variable count");
  if (a.n < 1)
    throw Error(ErrorCode::BadParameter, "--n must be positive");
  if (a.perturb < 0.0)
    throw Error(ErrorCode::BadParameter, "--perturb must be nonnegative");

  Rng rng(a.seed);
  const bool herm = all_points_real(data.zero_set);
  MatrixTuple x = random_member(data.zero_set, a.n, rng, herm).tuple;

  if (a.perturb > 0.0) {
    const JointSpectrum js = joint_diagonalize(x, tol);
    const size_t m = x.size();
    for (size_t j = 0; j < m; ++j) {
      std::vector<cplx> vals(a.n);
      for (int i = 0; i < a.n; ++i) vals[i] = js.lambda[i][j];
      for (int i = 0; i < a.n; ++i) {
        if (herm) {
          double v = vals[i].real() + rng.uniform(-a.perturb, a.perturb);
          vals[i] = std::clamp(v, -1.0, 1.0);
        } else {
          const double ang = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
          const double rad = a.perturb * rng.uniform01();
          cplx v = vals[i] + std::polar(rad, ang);
          if (std::abs(v) > 1.0) v /= std::abs(v);
          vals[i] = v;
        }
      }
      x[j] = rebuild_component(js.q, vals);
      if (herm) x[j] = hermitian_part(x[j]);
    }
  }
  save_tuple(a.out, x);
  return 0;
}

struct PreArgs {
  std::string in;
  double delta = 0.5;
  std::string family = "cube";
  std::string out;
  std::string report;
};

int run_precondition(const PreArgs& a) {
  const ToleranceConfig tol;
  const MatrixTuple x = load_tuple(a.in);
  const CpaResult res = a.family == "disk" ? cpa_normal(x, a.delta, tol)
                                           : cpa_hermitian(x, a.delta, tol);
  save_tuple(a.out, res.approximant);
  if (!a.report.empty()) save_cpa_report(a.report, res, a.delta);
  std::cout << "achieved_distance " << res.achieved_distance << " max_degree "
            << res.max_degree << "\n";
  return 0;
}

struct ConnectArgs {
  std::string x, y, constraints;
  double epsilon = 0.25;
  std::string family = "cube";
  bool nearly = false;
  double k_m = 1.0;
  int samples = 129;
  std::string out, cert;
};

int run_connect(const ConnectArgs& a) {
  const ToleranceConfig tol;
  const MatrixTuple x = load_tuple(a.x);
  const MatrixTuple y = load_tuple(a.y);
  const ConstraintData data = load_constraints(a.constraints, tol);
  const SetFamily family =
      a.family == "disk" ? SetFamily::Disk : SetFamily::Cube;

  PathResult res =
      a.nearly
          ? connect_nearly_algebraic(x, y, data.system, data.zero_set,
                                     a.epsilon, family, a.k_m, tol)
          : (family == SetFamily::Cube
                 ? connect_cube(x, y, data.system, data.zero_set, a.epsilon,
                                a.k_m, tol)
                 : connect_disk(x, y, data.system, data.zero_set, a.epsilon,
                                a.k_m, tol));

  CertifyConfig cfg;
  cfg.samples = a.samples;
  if (a.nearly)
    cfg.poly_gate = std::min(data.zero_set.delta1, a.epsilon / 2.0);
  const PathCertificate cert = certify_path(res.path, x, y, &data.system,
                                            a.epsilon, family, cfg, tol,
                                            &res.diagnostics);
  if (!a.out.empty()) save_path(a.out, res.path);
  if (!a.cert.empty()) save_certificate(a.cert, cert);
  std::cout << (cert.pass ? "certificate pass" : "certificate FAIL")
            << " ball_excess " << cert.max_ball_excess << " poly "
            << cert.max_poly_residual << " endpoints "
            << cert.endpoint_residual_start << " "
            << cert.endpoint_residual_end << "\n";
  return cert.pass ? 0 : 6;
}

struct CertifyArgs {
  std::string path, x, y, constraints;
  double epsilon = 0.25;
  std::string family = "cube";
  double poly_gate = 0.0;
  int samples = 129;
  std::string out;
};

int run_certify(const CertifyArgs& a) {
  const ToleranceConfig tol;
  const MatrixPath path = load_path(a.path, tol);
  const MatrixTuple x = load_tuple(a.x);
  const MatrixTuple y = load_tuple(a.y);
  ConstraintData data;
  const bool has_sys = !a.constraints.empty();
  if (has_sys) data = load_constraints(a.constraints, tol);

  CertifyConfig cfg;
  cfg.samples = a.samples;
  cfg.poly_gate = a.poly_gate;
  const SetFamily family =
      a.family == "disk" ? SetFamily::Disk : SetFamily::Cube;
  const PathCertificate cert =
      certify_path(path, x, y, has_sys ? &data.system : nullptr, a.epsilon,
                   family, cfg, tol);
  if (!a.out.empty()) save_certificate(a.out, cert);
  std::cout << (cert.pass ? "certificate pass" : "certificate FAIL") << "\n";
  return cert.pass ? 0 : 6;
}

struct SweepArgs {
  std::string zeros;
  double epsilon = 0.25;
  std::string dims = "2,4,8,16,32,64";
  uint64_t seed = 1;
  double perturb = 0.0;
  double cpa_delta = 0.5;
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  const ToleranceConfig tol;
  const ConstraintData data = load_constraints(a.zeros, tol);
  std::vector<int> dims;
  std::stringstream ss(a.dims);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      dims.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParameter, "--dims: cannot parse '" + item + "'");
    }
    if (dims.back() < 1)
      throw Error(ErrorCode::BadParameter, "--dims entries must be positive");
  }
  const SweepReport report =
      uniformity_sweep(data.system, data.zero_set, a.epsilon, dims, a.seed,
                       a.perturb, a.cpa_delta, tol);
  save_sweep_csv(a.out, report);
  int ok = 0;
  for (const SweepRow& r : report.rows) ok += r.success ? 1 : 0;
  std::cout << "sweep " << ok << "/" << report.rows.size() << " rows passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified paths between commuting matrix tuples on algebraic zero sets"};
  app.require_subcommand(1);

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a seeded (near-)member tuple");
  gen->add_option("--n", ga.n, "matrix size")->required();
  gen->add_option("--m", ga.m, "components (checked against the constraint file)");
  gen->add_option("--zeros", ga.zeros, "constraint/zero-set file")->required();
  gen->add_option("--seed", ga.seed, "generator seed");
  gen->add_option("--perturb", ga.perturb, "joint-eigenvalue perturbation radius");
  gen->add_option("--out", ga.out, "output tuple file")->required();

  PreArgs pa;
  auto* pre = app.add_subcommand("precondition", "cluster joint eigenvalues at spacing delta");
  pre->add_option("--in", pa.in, "input tuple file")->required();
  pre->add_option("--delta", pa.delta, "grid spacing")->required();
  pre->add_option("--family", pa.family, "cube|disk")
      ->check(CLI::IsMember({"cube", "disk"}));
  pre->add_option("--out", pa.out, "approximant tuple file")->required();
  pre->add_option("--report", pa.report, "JSON report file");

  ConnectArgs ca;
  auto* con = app.add_subcommand("connect", "build and certify a path between two members");
  con->add_option("--x", ca.x, "start tuple file")->required();
  con->add_option("--y", ca.y, "end tuple file")->required();
  con->add_option("--constraints", ca.constraints, "constraint/zero-set file")->required();
  con->add_option("--epsilon", ca.epsilon, "ball radius budget")->required();
  con->add_option("--family", ca.family, "cube|disk")
      ->check(CLI::IsMember({"cube", "disk"}));
  con->add_flag("--nearly", ca.nearly, "treat inputs as near-members");
  con->add_option("--k-m", ca.k_m, "budget constant K_m");
  con->add_option("--samples", ca.samples, "certificate sample floor");
  con->add_option("--out", ca.out, "path file");
  con->add_option("--cert", ca.cert, "certificate file");

  CertifyArgs ce;
  auto* cert = app.add_subcommand("certify", "re-certify a stored path");
  cert->add_option("--path", ce.path, "path file")->required();
  cert->add_option("--x", ce.x, "start tuple file")->required();
  cert->add_option("--y", ce.y, "end tuple file")->required();
  cert->add_option("--constraints", ce.constraints, "constraint/zero-set file");
  cert->add_option("--epsilon", ce.epsilon, "ball radius budget")->required();
  cert->add_option("--family", ce.family, "cube|disk")
      ->check(CLI::IsMember({"cube", "disk"}));
  cert->add_option("--poly-gate", ce.poly_gate, "polynomial residual gate (0 = tol_member)");
  cert->add_option("--samples", ce.samples, "certificate sample floor");
  cert->add_option("--out", ce.out, "certificate file");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "size-uniformity sweep over dimensions");
  sweep->add_option("--zeros", sa.zeros, "constraint/zero-set file")->required();
  sweep->add_option("--epsilon", sa.epsilon, "ball radius budget")->required();
  sweep->add_option("--dims", sa.dims, "comma-separated matrix sizes");
  sweep->add_option("--seed", sa.seed, "generator seed");
  sweep->add_option("--perturb", sa.perturb, "perturbation magnitude (0 = budget value)");
  sweep->add_option("--cpa-delta", sa.cpa_delta, "clustering spacing for the parallel run");
  sweep->add_option("--out", sa.out, "CSV output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(ga);
    if (pre->parsed()) return run_precondition(pa);
    if (con->parsed()) return run_connect(ca);
    if (cert->parsed()) return run_certify(ce);
    if (sweep->parsed()) return run_sweep(sa);
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what()
              << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
