#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "test_util.hpp"
#include "zpath/correction.hpp"

using namespace zpath;
using namespace zpath::testutil;

namespace {

MatrixTuple random_commuting_normal(int n, int m, Rng& rng, bool hermitian) {
  const CMatrix u = random_unitary(n, rng);
  MatrixTuple x;
  for (int j = 0; j < m; ++j) {
    std::vector<cplx> d(n);
    for (int i = 0; i < n; ++i)
      d[i] = hermitian ? cplx(rng.uniform(-1, 1), 0.0)
                       : cplx(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
    x.push_back(conjugate_tuple({diag(d)}, u)[0]);
  }
  return x;
}

}  // namespace

TEST_CASE("joint diagonalization recovers a shared eigenbasis") {
  Rng rng(101);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + rng.index(14);
    const int m = 1 + rng.index(3);
    const MatrixTuple x = random_commuting_normal(n, m, rng, trial % 2 == 0);
    const JointSpectrum js = joint_diagonalize(x);
    // Q unitary; Q* X_j Q diagonal with the reported rows.
    CHECK(frobenius_distance(conj_transpose_mul(js.q, js.q), CMatrix::identity(n)) <=
          1e-11 * n);
    for (int j = 0; j < m; ++j) {
      const CMatrix d = conj_transpose_mul(js.q, mul(x[j], js.q));
      double off = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          if (i != k) off += std::norm(d.at(i, k));
      CHECK(std::sqrt(off) <= 1e-9 * n);
      for (int i = 0; i < n; ++i)
        CHECK(std::abs(d.at(i, i) - js.lambda[i][j]) <= 1e-9);
    }
    // Rows sorted lexicographically by (Re, Im) per coordinate.
    for (int i = 1; i < n; ++i) {
      const auto& a = js.lambda[i - 1];
      const auto& b = js.lambda[i];
      bool lex_le = true;
      for (int j = 0; j < m; ++j) {
        if (a[j].real() < b[j].real()) break;
        if (a[j].real() > b[j].real()) { lex_le = false; break; }
        if (a[j].imag() < b[j].imag()) break;
        if (a[j].imag() > b[j].imag()) { lex_le = false; break; }
      }
      CHECK(lex_le);
    }
  }
}

TEST_CASE("joint diagonalization handles shared degeneracies") {
  // Two commuting matrices whose joint spectrum separates only jointly:
  // X has a double eigenvalue that Y splits, and vice versa.
  const CMatrix u = rotation(4, 0.0);
  MatrixTuple x{diag({1.0, 1.0, -1.0, -1.0}), diag({0.5, -0.5, 0.5, -0.5})};
  Rng rng(55);
  const CMatrix v = random_unitary(4, rng);
  const MatrixTuple xc = conjugate_tuple(x, v);
  const JointSpectrum js = joint_diagonalize(xc);
  // All four joint rows distinct and recovered: every expected (x, y) pair
  // appears exactly once (matched as a multiset; sorting near-equal floats
  // lexicographically would be order-unstable).
  const std::pair<double, double> expected[4] = {
      {-1.0, -0.5}, {-1.0, 0.5}, {1.0, -0.5}, {1.0, 0.5}};
  std::vector<bool> used(4, false);
  for (const auto& [ex, ey] : expected) {
    bool found = false;
    for (int i = 0; i < 4 && !found; ++i) {
      if (used[i]) continue;
      if (std::abs(js.lambda[i][0].real() - ex) <= 1e-9 &&
          std::abs(js.lambda[i][1].real() - ey) <= 1e-9) {
        used[i] = found = true;
      }
    }
    CHECK_MESSAGE(found, "missing joint row (", ex, ", ", ey, ")");
  }
  (void)u;
}

TEST_CASE("joint diagonalization rejects structural violations") {
  // Non-commuting pair.
  CMatrix ex(2);
  ex.at(0, 1) = 1.0;
  ex.at(1, 0) = 1.0;
  CHECK_THROWS_AS(joint_diagonalize({diag({1.0, -1.0}), ex}), Error);
  // Non-normal single matrix.
  CMatrix nn(2);
  nn.at(0, 1) = 1.0;
  CHECK_THROWS_AS(joint_diagonalize({nn}), Error);
}

TEST_CASE("joint spectral projectors") {
  const MatrixTuple x{diag({1.0, 1.0, -1.0})};
  const JointSpectrum js = joint_diagonalize(x);
  // Rows sorted ascending: two -1?? no: rows are (-1), (1), (1).
  const CMatrix p = joint_spectral_projector(js, {1, 2});
  CHECK(frobenius_distance(mul(p, p), p) <= 1e-12);
  CHECK(frobenius_distance(p, p.adjoint()) <= 1e-12);
  CHECK(std::abs(p.trace() - cplx(2.0)) <= 1e-12);
  // P X P = X P on the selected eigenspace with eigenvalue 1.
  const CMatrix xp = mul(x[0], p);
  CHECK(frobenius_distance(xp, p) <= 1e-12);
  CHECK_THROWS_AS(joint_spectral_projector(js, {0, 0}), Error);
  CHECK_THROWS_AS(joint_spectral_projector(js, {7}), Error);
}

TEST_CASE("spectral OPU from clustering") {
  const MatrixTuple x{diag({-1.0, -1.0 + 1e-9, 1.0})};
  const JointSpectrum js = joint_diagonalize(x);
  const OPU p = opu_from_spectrum(js, 1e-6);
  REQUIRE(p.projectors.size() == 2);
  validate_opu(p);
  CHECK(std::abs(p.projectors[0].trace() - cplx(2.0)) <= 1e-12);
  REQUIRE(p.labels.size() == 2);
  CHECK(std::abs(p.labels[0][0] - cplx(-1.0 + 5e-10)) <= 1e-12);
  // Centroids too close for the radius: reject.
  const MatrixTuple bad{diag({0.0, 1e-5, 1.0})};
  CHECK_THROWS_AS(opu_from_spectrum(joint_diagonalize(bad), 8e-6), Error);
}

TEST_CASE("projective refinement sizes and validity") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.index(7);
    const int fams = 1 + rng.index(3);
    const CMatrix u = random_unitary(n, rng);
    std::vector<OPU> parts;
    size_t bound = 1;
    for (int f = 0; f < fams; ++f) {
      // Random diagonal OPU conjugated by the shared unitary.
      const int classes = 1 + rng.index(std::min(n, 3));
      std::vector<std::vector<int>> members(classes);
      for (int i = 0; i < n; ++i) members[rng.index(classes)].push_back(i);
      OPU p;
      for (const auto& cls : members) {
        if (cls.empty()) continue;
        CMatrix proj(n);
        for (int i : cls) proj.at(i, i) = 1.0;
        p.projectors.push_back(conjugate_tuple({proj}, u)[0]);
      }
      bound *= p.projectors.size();
      validate_opu(p);
      parts.push_back(std::move(p));
    }
    const OPU refined = projective_refinement(parts);
    validate_opu(refined);
    CHECK(refined.projectors.size() <= bound);
    CHECK(refined.projectors.size() >= parts[0].projectors.size());
  }
}

TEST_CASE("projective refinement rejects non-commuting families") {
  OPU a, b;
  CMatrix p0(2), p1(2);
  p0.at(0, 0) = 1.0;
  p1.at(1, 1) = 1.0;
  a.projectors = {p0, p1};
  // Rotated family does not commute with the axis-aligned one.
  const CMatrix r = rotation(2, 0.7);
  b.projectors = {conjugate_tuple({p0}, r)[0], conjugate_tuple({p1}, r)[0]};
  CHECK_THROWS_AS(projective_refinement({a, b}), Error);
}

TEST_CASE("projective polar block structure") {
  Rng rng(88);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + rng.index(6);
    // OPU from a random commuting hermitian pair's refinement.
    const CMatrix u = random_unitary(n, rng);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = rng.index(3);
    OPU p;
    for (int cls = 0; cls < 3; ++cls) {
      CMatrix proj(n);
      bool any = false;
      for (int i = 0; i < n; ++i)
        if (labels[i] == cls) {
          proj.at(i, i) = 1.0;
          any = true;
        }
      if (any) p.projectors.push_back(conjugate_tuple({proj}, u)[0]);
    }
    validate_opu(p);
    const CMatrix w = random_unitary(n, rng);
    const auto blocks = projective_polar(p, w);
    REQUIRE(blocks.size() == p.projectors.size());
    CMatrix vsum(n), rsum(n);
    for (size_t j = 0; j < blocks.size(); ++j) {
      const CMatrix& pj = p.projectors[j];
      const CMatrix& vj = blocks[j].v;
      const CMatrix& rj = blocks[j].r;
      // The six block conditions: V_j V_j* = V_j* V_j = P_j; V_j, R_j live
      // inside the block (P V P = V, P R P = R); R_j psd hermitian;
      // V_j R_j = P_j W P_j.
      CHECK(frobenius_distance(mul_conj_transpose(vj, vj), pj) <= 1e-9 * n);
      CHECK(frobenius_distance(conj_transpose_mul(vj, vj), pj) <= 1e-9 * n);
      CHECK(frobenius_distance(mul(pj, mul(vj, pj)), vj) <= 1e-9 * n);
      CHECK(frobenius_distance(mul(pj, mul(rj, pj)), rj) <= 1e-9 * n);
      CHECK(frobenius_distance(rj, rj.adjoint()) <= 1e-9 * n);
      const CMatrix pwp = mul(pj, mul(w, pj));
      CHECK(frobenius_distance(mul(vj, rj), pwp) <= 1e-9 * n);
      vsum += vj;
      rsum += rj;
    }
    // The block unitaries assemble to a unitary.
    CHECK(frobenius_distance(conj_transpose_mul(vsum, vsum), CMatrix::identity(n)) <=
          1e-8 * n);
  }
}

TEST_CASE("commuting correction oracle: plane rotation against diag(1,-1)") {
  const CMatrix d = diag({1.0, -1.0});
  const CMatrix w = rotation(2, 0.1);
  OPU p;
  CMatrix p0(2), p1(2);
  p0.at(0, 0) = 1.0;
  p1.at(1, 1) = 1.0;
  p.projectors = {p0, p1};
  p.labels = {{cplx(1.0)}, {cplx(-1.0)}};
  const CorrectionResult res = commuting_correction(w, d, p);
  // Closed form: residual ||W D W* - D|| = 2 sin(0.1); the blockwise polar of
  // the pinch is the identity, so ||1 - W Z|| = ||1 - W|| = 2 sin(0.05).
  CHECK(res.bound_constant == doctest::Approx(3.0));
  CHECK(res.residual == doctest::Approx(2.0 * std::sin(0.1)).epsilon(1e-9));
  CHECK(res.achieved == doctest::Approx(2.0 * std::sin(0.05)).epsilon(1e-9));
  CHECK(res.z_commutator <= 1e-12);
  CHECK(res.bound_holds);
}

TEST_CASE("commuting correction trivial cases") {
  const CMatrix d = diag({1.0, -1.0});
  OPU p;
  CMatrix p0(2), p1(2);
  p0.at(0, 0) = 1.0;
  p1.at(1, 1) = 1.0;
  p.projectors = {p0, p1};
  p.labels = {{cplx(1.0)}, {cplx(-1.0)}};
  // W = identity.
  const CorrectionResult id = commuting_correction(CMatrix::identity(2), d, p);
  CHECK(id.achieved <= 1e-12);
  CHECK(id.residual <= 1e-12);
  // W already block diagonal (a diagonal unitary).
  const CMatrix wd = diag({std::polar(1.0, 0.4), std::polar(1.0, -1.1)});
  const CorrectionResult bd = commuting_correction(wd, d, p);
  CHECK(bd.residual <= 1e-12);
  CHECK(bd.achieved <= 1e-10);
  // Scalar OPU (r = 1): Z = W*.
  OPU scalar;
  scalar.projectors = {CMatrix::identity(2)};
  scalar.labels = {{cplx(0.5)}};
  const CMatrix w = rotation(2, 0.3);
  const CorrectionResult sc =
      commuting_correction(w, diag({0.5, 0.5}), scalar);
  CHECK(frobenius_distance(sc.z, w.adjoint()) <= 1e-12);
  CHECK(sc.achieved <= 1e-12);
}

TEST_CASE("commuting correction bound on random instances") {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + rng.index(7);
    const int r = 2 + rng.index(std::min(n - 1, 3));
    // Labels with gap at least 0.5.
    std::vector<double> labels(r);
    for (int j = 0; j < r; ++j) labels[j] = -1.0 + 2.0 * j / (r - 1);
    std::vector<int> assign(n);
    for (int i = 0; i < n; ++i) assign[i] = i < r ? i : rng.index(r);
    std::vector<cplx> dvals(n);
    for (int i = 0; i < n; ++i) dvals[i] = labels[assign[i]];
    const CMatrix d = diag(dvals);
    OPU p;
    p.labels.clear();
    for (int j = 0; j < r; ++j) {
      CMatrix proj(n);
      for (int i = 0; i < n; ++i)
        if (assign[i] == j) proj.at(i, i) = 1.0;
      p.projectors.push_back(proj);
      p.labels.push_back({cplx(labels[j])});
    }
    const CMatrix w = unitary_exp(random_skew(n, rng, 0.1), 1.0);
    const CorrectionResult res = commuting_correction(w, d, p);
    CHECK(res.achieved <= res.bound_constant * res.residual + 1e-9);
    CHECK(res.z_commutator <= 1e-9);
    ++checked;
  }
  CHECK(checked == 120);
}

TEST_CASE("refined correction degenerates to the single-matrix case") {
  Rng rng(111);
  const int n = 5;
  std::vector<cplx> dvals{1.0, 1.0, 0.0, -1.0, -1.0};
  const CMatrix u = random_unitary(n, rng);
  const CMatrix d = conjugate_tuple({diag(dvals)}, u)[0];
  const CMatrix w = unitary_exp(random_skew(n, rng, 0.08), 1.0);

  const JointSpectrum js = joint_diagonalize({d});
  const OPU p = opu_from_spectrum(js, 1e-6);
  const CorrectionResult single = commuting_correction(w, d, p);
  const CorrectionResult refined = refined_commuting_correction(w, {d}, p);
  CHECK(std::abs(single.residual - refined.residual) <= 1e-10);
  CHECK(std::abs(single.achieved - refined.achieved) <= 1e-10);
  CHECK(frobenius_distance(single.z, refined.z) <= 1e-10);
  // Constants differ by the family prefactor only.
  CHECK(refined.bound_constant == doctest::Approx(2.0 * std::sqrt(2.0) * 1.0 *
                                                  p.projectors.size() *
                                                  single.bound_constant));
}

TEST_CASE("refined correction commutes with every component") {
  Rng rng(113);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + rng.index(6);
    const int m = 1 + rng.index(2);
    const MatrixTuple x = random_commuting_normal(n, m, rng, true);
    const JointSpectrum js = joint_diagonalize(x);
    // Per-component OPUs via clustering each coordinate.
    std::vector<OPU> parts;
    for (int j = 0; j < m; ++j) {
      MatrixTuple comp{x[j]};
      parts.push_back(opu_from_spectrum(joint_diagonalize(comp), 1e-6));
    }
    const OPU refined = projective_refinement(parts);
    const CMatrix w = unitary_exp(random_skew(n, rng, 0.05), 1.0);
    const CorrectionResult res = refined_commuting_correction(w, x, refined);
    CHECK(res.z_commutator <= 1e-8);
    CHECK(frobenius_distance(conj_transpose_mul(res.z, res.z),
                             CMatrix::identity(n)) <= 1e-9 * n);
  }
}
