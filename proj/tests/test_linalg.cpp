#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "zpath/linalg.hpp"

using namespace zpath;
using namespace zpath::testutil;

namespace {
constexpr double kPi = std::numbers::pi;

CMatrix sigma_x() {
  CMatrix h(2);
  h.at(0, 1) = 1.0;
  h.at(1, 0) = 1.0;
  return h;
}
}  // namespace

TEST_CASE("matrix primitives") {
  CMatrix a(2);
  a.at(0, 0) = cplx(1.0, 2.0);
  a.at(0, 1) = cplx(0.0, -1.0);
  a.at(1, 0) = 3.0;
  a.at(1, 1) = cplx(-2.0, 0.5);

  const CMatrix ad = a.adjoint();
  CHECK(ad.at(0, 0) == std::conj(a.at(0, 0)));
  CHECK(ad.at(1, 0) == std::conj(a.at(0, 1)));
  CHECK(a.trace() == a.at(0, 0) + a.at(1, 1));

  const CMatrix id = CMatrix::identity(2);
  const CMatrix prod = mul(a, id);
  CHECK(frobenius_distance(prod, a) == 0.0);

  // A* B and A B* against explicit products.
  const CMatrix lhs = conj_transpose_mul(a, a);
  const CMatrix rhs = mul(a.adjoint(), a);
  CHECK(frobenius_distance(lhs, rhs) <= 1e-14);
  const CMatrix lhs2 = mul_conj_transpose(a, a);
  const CMatrix rhs2 = mul(a, a.adjoint());
  CHECK(frobenius_distance(lhs2, rhs2) <= 1e-14);

  const CMatrix h = hermitian_part(a);
  CHECK(frobenius_distance(h, h.adjoint()) <= 1e-15);
  const CMatrix s = anti_hermitian_imag(a);
  CHECK(frobenius_distance(s, s.adjoint()) <= 1e-15);
  // a = h + i s reconstruction.
  CMatrix recon = h;
  CMatrix si = s;
  si *= cplx(0.0, 1.0);
  recon += si;
  CHECK(frobenius_distance(recon, a) <= 1e-14);
}

TEST_CASE("hermitian eigensolver on the exchange matrix") {
  const EigenDecomposition e = hermitian_eigen(sigma_x());
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  // Columns are eigenvectors: H q_k = lambda_k q_k.
  for (int k = 0; k < 2; ++k) {
    std::vector<cplx> v{e.q.at(0, k), e.q.at(1, k)}, w(2);
    matvec(sigma_x(), v.data(), w.data());
    CHECK(std::abs(w[0] - e.values[k] * v[0]) <= 1e-12);
    CHECK(std::abs(w[1] - e.values[k] * v[1]) <= 1e-12);
  }
}

TEST_CASE("eigensolver random hermitian reconstruction and ordering") {
  Rng rng(11);
  for (int n : {3, 8, 24}) {
    const CMatrix h = random_hermitian(n, rng, 1.0);
    const EigenDecomposition e = hermitian_eigen(h);
    for (size_t i = 1; i < e.values.size(); ++i)
      CHECK(e.values[i - 1] <= e.values[i]);
    // Q diag Q* reconstructs and Q is unitary.
    CMatrix recon(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        cplx sum = 0.0;
        for (int k = 0; k < n; ++k)
          sum += e.q.at(i, k) * e.values[k] * std::conj(e.q.at(j, k));
        recon.at(i, j) = sum;
      }
    CHECK(frobenius_distance(recon, h) <= 1e-11 * std::max(1.0, h.frobenius()));
    const CMatrix gram = conj_transpose_mul(e.q, e.q);
    CHECK(frobenius_distance(gram, CMatrix::identity(n)) <= 1e-12 * n);
  }
}

TEST_CASE("eigensolver rejects non-hermitian input") {
  CMatrix a(2);
  a.at(0, 1) = 1.0;  // strictly upper triangular
  CHECK_THROWS_AS(hermitian_eigen(a), Error);
}

TEST_CASE("operator norm oracles") {
  CMatrix a(2);
  a.at(0, 1) = 2.0;  // nilpotent with singular value 2
  CHECK(operator_norm(a) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(operator_norm(CMatrix::identity(5)) == doctest::Approx(1.0));
  CHECK(operator_norm(CMatrix(4)) == 0.0);
}

TEST_CASE("norm estimator agrees with the eigensolver norm") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + rng.index(20);
    CMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a.at(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double exact = operator_norm(a);
    const double est = est_operator_norm(a);
    CHECK(est <= exact + 1e-9);
    CHECK(est >= exact - 1e-7 * std::max(1.0, exact));
  }
}

TEST_CASE("linop estimator matches the formed commutator") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + rng.index(12);
    CMatrix a(n), b(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        b.at(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
      }
    std::vector<cplx> t(n), u(n);
    const LinOpFn ap = [&](const cplx* x, cplx* y) {
      matvec(b, x, t.data());
      matvec(a, t.data(), y);
      matvec(a, x, t.data());
      matvec(b, t.data(), u.data());
      for (int i = 0; i < n; ++i) y[i] -= u[i];
    };
    const LinOpFn ad = [&](const cplx* x, cplx* y) {
      matvec_adjoint(a, x, t.data());
      matvec_adjoint(b, t.data(), y);
      matvec_adjoint(b, x, t.data());
      matvec_adjoint(a, t.data(), u.data());
      for (int i = 0; i < n; ++i) y[i] -= u[i];
    };
    const double exact = operator_norm(commutator(a, b));
    const double est = est_linop_norm(n, ap, ad);
    CHECK(std::abs(est - exact) <= 1e-7 * std::max(1.0, exact));
  }
}

TEST_CASE("polar decomposition") {
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + rng.index(10);
    CMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a.at(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    if (trial % 5 == 0)  // exercise the rank-deficient branch
      for (int i = 0; i < n; ++i) a.at(i, 0) = 0.0;
    const PolarResult p = polar_decompose(a);
    CHECK(frobenius_distance(conj_transpose_mul(p.v, p.v), CMatrix::identity(n)) <=
          1e-10 * n);
    CHECK(frobenius_distance(mul(p.v, p.r), a) <= 1e-9 * std::max(1.0, a.frobenius()));
    CHECK(frobenius_distance(p.r, p.r.adjoint()) <= 1e-10 * n);
    const EigenDecomposition e = hermitian_eigen(p.r);
    CHECK(e.values.front() >= -1e-9);
  }
}

TEST_CASE("full pinching against a two-block split") {
  CMatrix p1(3), p2(3);
  p1.at(0, 0) = 1.0;
  p2.at(1, 1) = 1.0;
  p2.at(2, 2) = 1.0;
  CMatrix w(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w.at(i, j) = cplx(i + 1, j - 1);
  const CMatrix pinched = full_pinching(w, {p1, p2});
  // Diagonal blocks survive, off-diagonal blocks vanish.
  CHECK(pinched.at(0, 0) == w.at(0, 0));
  CHECK(pinched.at(1, 1) == w.at(1, 1));
  CHECK(pinched.at(1, 2) == w.at(1, 2));
  CHECK(std::abs(pinched.at(0, 1)) == 0.0);
  CHECK(std::abs(pinched.at(2, 0)) == 0.0);
}

TEST_CASE("unitary exponential of a known generator") {
  // K = [[0, -t], [t, 0]] generates the plane rotation by t.
  const double t = 0.3;
  CMatrix k(2);
  k.at(0, 1) = -t;
  k.at(1, 0) = t;
  const CMatrix u = unitary_exp(k, 1.0);
  CHECK(frobenius_distance(u, rotation(2, t)) <= 1e-12);
  const CMatrix uhalf = unitary_exp(k, 0.5);
  CHECK(frobenius_distance(uhalf, rotation(2, t / 2)) <= 1e-12);
}

TEST_CASE("principal log oracle on diag(i, -i)") {
  const CMatrix w = diag({cplx(0.0, 1.0), cplx(0.0, -1.0)});
  const CMatrix k = principal_skew_log(w);
  CHECK(std::abs(k.at(0, 0) - cplx(0.0, kPi / 2)) <= 1e-12);
  CHECK(std::abs(k.at(1, 1) - cplx(0.0, -kPi / 2)) <= 1e-12);
  CHECK(std::abs(k.at(0, 1)) <= 1e-12);
}

TEST_CASE("principal log branch edge is rejected unless allowed") {
  const CMatrix w = diag({cplx(-1.0, 0.0), cplx(1.0, 0.0)});
  CHECK_THROWS_AS(principal_skew_log(w), Error);
  const CMatrix k = principal_skew_log(w, {}, true);
  CHECK(est_operator_norm(k) == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("log bound and reconstruction on random unitaries") {
  Rng rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + rng.index(8);
    // Spectrum kept away from -1 by construction: exp of a small skew.
    const CMatrix k0 = random_skew(n, rng, 1.5);
    const CMatrix w = unitary_exp(k0, 1.0);
    const CMatrix k = principal_skew_log(w);
    const double knorm = operator_norm(k);
    const double dist = operator_norm(w - CMatrix::identity(n));
    CHECK(knorm <= kPi / 2.0 * dist + 1e-9);
    CHECK(operator_norm(unitary_exp(k, 1.0) - w) <= 1e-9);
  }
}
