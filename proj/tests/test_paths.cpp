#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "zpath/connect.hpp"
#include "zpath/eigen.hpp"
#include "zpath/linalg.hpp"

using namespace zpath;
using namespace zpath::testutil;

namespace {

const BoundCheck* find_check(const std::vector<BoundCheck>& checks,
                             const std::string& name) {
  for (const BoundCheck& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("flat path interpolates linearly") {
  const MatrixTuple x{diag({1.0, -1.0})};
  const MatrixTuple y{diag({0.5, -0.5})};
  const MatrixPath p = flat_path(x, y);
  CHECK(p.segment_count() == 1);
  CHECK(exact_metric(p.sample(0.0), x) == 0.0);  // endpoints bit-exact
  CHECK(exact_metric(p.sample(1.0), y) == 0.0);
  const MatrixTuple mid = p.sample(0.5);
  CHECK(std::abs(mid[0].at(0, 0) - cplx(0.75)) <= 1e-15);
  CHECK(exact_metric(mid, y) == doctest::Approx(0.25));
  CHECK(exact_metric(mid, x) == doctest::Approx(0.25));
}

TEST_CASE("flat path requires cross commutation") {
  CMatrix ex(2);
  ex.at(0, 1) = 0.5;
  ex.at(1, 0) = 0.5;
  const MatrixTuple x{diag({1.0, -1.0})};
  const MatrixTuple y{ex};
  const auto code = thrown_code([&] { flat_path(x, y); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::NotCrossCommuting);
}

TEST_CASE("conjugation segment sampling") {
  const double theta = 0.3;
  CMatrix k(2);
  k.at(0, 1) = -theta;
  k.at(1, 0) = theta;
  const MatrixTuple base{diag({1.0, -1.0})};
  const ConjugationSegment seg = make_conjugation(base, k, 1.0, 0.0);

  // s(1) = 0: the base is returned without any arithmetic.
  const MatrixTuple at_end = segment_sample(PathSegment(seg), 1.0);
  CHECK(exact_metric(at_end, base) == 0.0);

  // s(0) = 1: full conjugation by exp(K) = rotation(theta).
  const MatrixTuple at_start = segment_sample(PathSegment(seg), 0.0);
  const MatrixTuple expect = conjugate_tuple(base, rotation(2, theta));
  CHECK(exact_metric(at_start, expect) <= 1e-12);

  // Halfway: rotation by theta/2.
  const MatrixTuple at_half = segment_sample(PathSegment(seg), 0.5);
  const MatrixTuple expect_half = conjugate_tuple(base, rotation(2, theta / 2));
  CHECK(exact_metric(at_half, expect_half) <= 1e-12);
}

TEST_CASE("conjugation rejects non-skew exponents") {
  CMatrix k(2);
  k.at(0, 1) = 0.3;
  k.at(1, 0) = 0.3;  // symmetric, not skew-hermitian
  const MatrixTuple base{diag({1.0, -1.0})};
  const auto code =
      thrown_code([&] { make_conjugation(base, k, 1.0, 0.0); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::NotSkewHermitian);

  CMatrix wrong(3);
  const auto code2 =
      thrown_code([&] { make_conjugation(base, wrong, 1.0, 0.0); });
  REQUIRE(code2.has_value());
  CHECK(*code2 == ErrorCode::ShapeMismatch);
}

TEST_CASE("concatenation splits the parameter uniformly") {
  const MatrixTuple x{diag({1.0, -1.0})};
  const MatrixTuple m1{diag({0.5, -0.5})};
  const MatrixTuple y{diag({0.0, 0.0})};
  const MatrixPath a = flat_path(x, m1);
  const MatrixPath b = flat_path(m1, y);
  const MatrixPath ab = concat(a, b);
  CHECK(ab.segment_count() == 2);
  CHECK(exact_metric(ab.sample(0.25), a.sample(0.5)) <= 1e-15);
  CHECK(exact_metric(ab.sample(0.75), b.sample(0.5)) <= 1e-15);
  CHECK(exact_metric(ab.sample(0.5), m1) <= 1e-15);

  // Associativity: the segment list is the same either way.
  const MatrixTuple w{diag({-0.25, 0.25})};
  const MatrixPath c = flat_path(y, w);
  const MatrixPath left = concat(concat(a, b), c);
  const MatrixPath right = concat(a, concat(b, c));
  REQUIRE(left.segment_count() == 3);
  REQUIRE(right.segment_count() == 3);
  for (int i = 0; i <= 12; ++i) {
    const double t = i / 12.0;
    CHECK(exact_metric(left.sample(t), right.sample(t)) <= 1e-14);
  }
}

TEST_CASE("concatenation rejects junction jumps") {
  const MatrixTuple x{diag({1.0, -1.0})};
  const MatrixTuple m1{diag({0.5, -0.5})};
  const MatrixTuple m2{diag({0.4, -0.4})};
  const MatrixTuple y{diag({0.0, 0.0})};
  const auto code = thrown_code(
      [&] { concat(flat_path(x, m1), flat_path(m2, y)); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::DiscontinuousJoin);
}

TEST_CASE("isospectral match carries X onto Y") {
  const ZeroSet z = sign_zero_set(1);
  Rng rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + rng.index(5);
    const MatrixTuple base = random_member(sign_zero_set(2), n, rng, true).tuple;
    const CMatrix u = random_unitary(n, rng);
    const CMatrix v = random_unitary(n, rng);
    const MatrixTuple x = conjugate_tuple(base, u);
    const MatrixTuple y = conjugate_tuple(base, v);
    const CMatrix w = isospectral_match(x, y, sign_zero_set(2));
    // Unitary, and W* Y W recovers X.
    CHECK(operator_norm(conj_transpose_mul(w, w) - CMatrix::identity(n)) <=
          1e-9);
    double worst = 0.0;
    for (size_t j = 0; j < x.size(); ++j)
      worst = std::max(worst,
                       operator_norm(conj_transpose_mul(w, mul(y[j], w)) - x[j]));
    CHECK(worst <= 1e-8);
  }

  // Degenerate multiplicities still match.  The rotation mixes the -1 and +1
  // eigenvectors, so the matching really has to permute and align classes.
  const MatrixTuple xd{diag({1.0, 1.0, -1.0})};
  const MatrixTuple yd =
      conjugate_tuple({diag({-1.0, 1.0, 1.0})}, rotation(3, 0.4));
  const CMatrix wd = isospectral_match(xd, yd, z);
  double worst = 0.0;
  for (size_t j = 0; j < xd.size(); ++j)
    worst = std::max(
        worst, operator_norm(conj_transpose_mul(wd, mul(yd[j], wd)) - xd[j]));
  CHECK(worst <= 1e-9);
}

TEST_CASE("isospectral match failure modes") {
  const ZeroSet z = sign_zero_set(1);
  // Multisets disagree: {1, -1} vs {1, 1}.
  const auto code = thrown_code([&] {
    isospectral_match({diag({1.0, -1.0})}, {diag({1.0, 1.0})}, z);
  });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::DeltaTooLarge);

  // Spectrum far from every zero: 0 is at distance 1 >= gap/3 from {-1, 1}.
  const auto code2 = thrown_code([&] {
    isospectral_match({diag({0.0, -1.0})}, {diag({1.0, -1.0})}, z);
  });
  REQUIRE(code2.has_value());
  CHECK(*code2 == ErrorCode::SpectraOffZeroSet);
}

TEST_CASE("delta budget frozen values") {
  const double eps = 0.25;
  const double pi = std::numbers::pi;
  const ZeroSet z1 = sign_zero_set(1);
  const DeltaBudget b1 = delta_budget(z1, eps, 1, 1.0);
  CHECK(!b1.degenerate);
  CHECK(b1.h_p == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(b1.k_prod == 2);
  CHECK(b1.l_max == 2);
  // 2 h asin(eps/4) / (3 pi sqrt(2) * m * K_m * K * L(L-1)) with
  // h = 2/3, m = 1, K_m = 1, K = 2, L = 2 collapses to
  // asin(eps/4) / (9 pi sqrt(2)).
  const double expect1 = std::asin(eps / 4.0) / (9.0 * pi * std::sqrt(2.0));
  CHECK(b1.delta == doctest::Approx(expect1).epsilon(1e-12));

  // Monotone in epsilon.
  CHECK(delta_budget(z1, 0.1, 1).delta < b1.delta);
  // Quadratic decay in the norm bound K_m (shrinks h and scales the
  // denominator).
  CHECK(delta_budget(z1, eps, 1, 2.0).delta ==
        doctest::Approx(b1.delta / 4.0).epsilon(1e-12));

  // Two sign coordinates: K = 4, extra factor m = 2.
  const ZeroSet z2 = sign_zero_set(2);
  const DeltaBudget b2 = delta_budget(z2, eps, 2, 1.0);
  CHECK(b2.k_prod == 4);
  CHECK(b2.l_max == 2);
  const double expect2 =
      2.0 * (2.0 / 3.0) * std::asin(eps / 4.0) /
      (3.0 * pi * std::sqrt(2.0) * 2.0 * 1.0 * 4.0 * 2.0 * 1.0);
  CHECK(b2.delta == doctest::Approx(expect2).epsilon(1e-12));
  CHECK(b2.delta < b1.delta);
}

TEST_CASE("delta budget degenerates to the flat bound") {
  // One-point zero set: every coordinate is single-valued, so the input
  // distance budget is epsilon itself (flat interpolation regime).
  MultiPolySystem sys = sign_system(1);
  const ZeroSet z = validate_zero_set({{cplx(1.0)}}, sys);
  const DeltaBudget b = delta_budget(z, 0.25, 1, 1.0);
  CHECK(b.degenerate);
  CHECK(b.delta == doctest::Approx(0.25));
}

TEST_CASE("homomorphism path between rotated sign tuples") {
  const ZeroSet z = sign_zero_set(1);
  const double theta = 0.05;
  const MatrixTuple y{diag({1.0, -1.0})};
  const MatrixTuple x = conjugate_tuple(y, rotation(2, theta));
  const double eps = 0.25;
  const PathResult res = homomorphism_path(x, y, z, eps);
  REQUIRE(res.path.segment_count() == 1);
  CHECK(std::holds_alternative<ConjugationSegment>(res.path.segments()[0]));

  CHECK(exact_metric(res.path.sample(0.0), x) <= 1e-9);
  CHECK(exact_metric(res.path.sample(1.0), y) == 0.0);
  for (int i = 0; i <= 8; ++i) {
    const MatrixTuple s = res.path.sample(i / 8.0);
    CHECK(exact_metric(s, y) <= eps);
    // Conjugation preserves the spectrum along the whole path.
    const EigenDecomposition e = hermitian_eigen(s[0]);
    CHECK(std::abs(e.values[0] + 1.0) <= 1e-9);
    CHECK(std::abs(e.values[1] - 1.0) <= 1e-9);
  }

  for (const char* name :
       {"almost_unit_bound", "correction_commutes", "log_norm_bound",
        "k_vs_2asin_eps4", "k_vs_2asin_eps2", "match_snap_distance"}) {
    const BoundCheck* c = find_check(res.diagnostics, name);
    REQUIRE_MESSAGE(c != nullptr, name);
    CHECK_MESSAGE(c->pass, name);
  }
  const BoundCheck* kb = find_check(res.diagnostics, "k_vs_2asin_eps4");
  CHECK(kb->measured <= 2.0 * std::asin(eps / 4.0) + 1e-9);
}

TEST_CASE("homomorphism path short-circuits identical inputs") {
  const ZeroSet z = sign_zero_set(1);
  const MatrixTuple y{diag({1.0, -1.0})};
  const PathResult res = homomorphism_path(y, y, z, 0.25);
  CHECK(exact_metric(res.path.sample(0.5), y) <= 1e-12);
  CHECK(res.diagnostics.size() == 6);
  for (const BoundCheck& c : res.diagnostics) CHECK(c.pass);
}

TEST_CASE("homomorphism path epsilon gates") {
  const ZeroSet z = sign_zero_set(1);
  const MatrixTuple y{diag({1.0, -1.0})};
  const auto zero_eps = thrown_code([&] { homomorphism_path(y, y, z, 0.0); });
  REQUIRE(zero_eps.has_value());
  CHECK(*zero_eps == ErrorCode::BadParameter);
  const auto big_eps = thrown_code(
      [&] { homomorphism_path(y, y, z, epsilon_limit() + 1e-6); });
  REQUIRE(big_eps.has_value());
  CHECK(*big_eps == ErrorCode::EpsilonTooLarge);
}

TEST_CASE("round to zero set snaps joint eigenvalues") {
  const ZeroSet z = sign_zero_set(1);
  const MatrixTuple x{diag({0.98, -1.02})};
  const MatrixTuple r = round_to_zero_set(x, z);
  CHECK(exact_metric(r, {diag({1.0, -1.0})}) <= 1e-12);
  CHECK(exact_metric(r, x) == doctest::Approx(0.02).epsilon(1e-8));

  // A joint eigenvalue at 0 sits at distance 1 = gap/2 from both zeros.
  const auto code =
      thrown_code([&] { round_to_zero_set({diag({0.0, -1.0})}, z); });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::NoNearbyZero);
}

TEST_CASE("connect_cube produces certified-quality paths") {
  Rng rng(31);
  const double eps = 0.25;
  for (int m : {1, 2}) {
    const MultiPolySystem sys = sign_system(m);
    const ZeroSet z = sign_zero_set(m);
    for (int n : {2, 4}) {
      const MatrixTuple y = random_member(z, n, rng, true).tuple;
      const CMatrix u = unitary_exp(random_skew(n, rng, 0.02), 1.0);
      const MatrixTuple x = conjugate_tuple(y, u);
      const PathResult res = connect_cube(x, y, sys, z, eps);
      CHECK(exact_metric(res.path.sample(0.0), x) <= 1e-8);
      CHECK(exact_metric(res.path.sample(1.0), y) <= 1e-12);
      for (int i = 0; i <= 8; ++i) {
        const MatrixTuple s = res.path.sample(i / 8.0);
        CHECK(exact_metric(s, y) <= eps);
        const MembershipReport rep =
            check_membership(s, SetFamily::Cube, &sys, 0.0);
        CHECK(rep.worst_poly <= 1e-8);
        CHECK(rep.worst_commutator <= 1e-9);
      }
    }
  }
}

TEST_CASE("connect_cube rejects non-members") {
  const MultiPolySystem sys = sign_system(1);
  const ZeroSet z = sign_zero_set(1);
  const auto code = thrown_code([&] {
    connect_cube({diag({0.5, -0.5})}, {diag({1.0, -1.0})}, sys, z, 0.25);
  });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::NotMember);
}

TEST_CASE("connect_disk handles genuinely normal members") {
  Rng rng(37);
  const MultiPolySystem sys = quartic_system();
  const ZeroSet z = quartic_zero_set();
  const double eps = 0.25;
  const MatrixTuple y{diag({cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-1.0, 0.0),
                            cplx(0.0, -1.0)})};
  const CMatrix u = unitary_exp(random_skew(4, rng, 0.02), 1.0);
  const MatrixTuple x = conjugate_tuple(y, u);
  const PathResult res = connect_disk(x, y, sys, z, eps);
  CHECK(exact_metric(res.path.sample(0.0), x) <= 1e-8);
  CHECK(exact_metric(res.path.sample(1.0), y) <= 1e-8);
  for (int i = 0; i <= 8; ++i) {
    const MatrixTuple s = res.path.sample(i / 8.0);
    CHECK(exact_metric(s, y) <= eps);
    const MembershipReport rep =
        check_membership(s, SetFamily::Disk, &sys, 0.0);
    CHECK(rep.worst_poly <= 1e-8);
    CHECK(rep.worst_normality <= 1e-9);
  }
}

TEST_CASE("connect_disk degenerates to the hermitian case") {
  // All zeros real: the disk construction must agree with a cube-style path.
  MultiPolySystem sys;
  sys.vars = 1;
  MultiPoly p(1);
  p.add_term({2}, 1.0);
  p.add_term({0}, -1.0);
  sys.polys.push_back(std::move(p));
  const ZeroSet z = validate_zero_set({{cplx(1.0)}, {cplx(-1.0)}}, sys);

  const MatrixTuple y{diag({1.0, -1.0})};
  const MatrixTuple x = conjugate_tuple(y, rotation(2, 0.05));
  const PathResult res = connect_disk(x, y, sys, z, 0.25);
  CHECK(exact_metric(res.path.sample(0.0), x) <= 1e-8);
  CHECK(exact_metric(res.path.sample(1.0), y) <= 1e-8);
  for (int i = 0; i <= 8; ++i) {
    const MatrixTuple s = res.path.sample(i / 8.0);
    CHECK(exact_metric(s, y) <= 0.25);
    // Hermitian endpoints stay hermitian along the lifted path.
    CHECK(operator_norm(s[0] - s[0].adjoint()) <= 1e-8);
  }
}

TEST_CASE("connect_nearly_algebraic retracts then connects") {
  const MultiPolySystem sys = sign_system(1);
  const ZeroSet z = sign_zero_set(1);
  const double eps = 0.25;
  const double delta1 = std::min(z.delta1, eps / 2.0);

  const MatrixTuple x{diag({0.99, -0.99})};
  const MatrixTuple y =
      conjugate_tuple({diag({1.0, -0.98})}, rotation(2, 0.1));
  const PathResult res =
      connect_nearly_algebraic(x, y, sys, z, eps, SetFamily::Cube);
  CHECK(res.path.segment_count() == 3);
  CHECK(exact_metric(res.path.sample(0.0), x) == 0.0);
  CHECK(exact_metric(res.path.sample(1.0), y) <= 1e-12);

  for (int i = 0; i <= 16; ++i) {
    const MatrixTuple s = res.path.sample(i / 16.0);
    CHECK(exact_metric(s, y) <= eps);
    const MembershipReport rep =
        check_membership(s, SetFamily::Cube, &sys, delta1);
    CHECK(rep.worst_poly <= delta1 + 1e-9);
  }
  for (const char* name : {"rounding_x", "rounding_y"}) {
    const BoundCheck* c = find_check(res.diagnostics, name);
    REQUIRE_MESSAGE(c != nullptr, name);
    CHECK_MESSAGE(c->pass, name);
  }

  // Residuals beyond the near-membership budget are rejected.
  const auto code = thrown_code([&] {
    connect_nearly_algebraic({diag({0.5, -0.5})}, y, sys, z, eps,
                             SetFamily::Cube);
  });
  REQUIRE(code.has_value());
  CHECK(*code == ErrorCode::NotNearlyMember);
}
