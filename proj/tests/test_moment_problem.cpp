#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "ptmom/moment_problem.hpp"
#include "ptmom/rng.hpp"

using namespace ptmom;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MomentVector mv(std::initializer_list<double> vals) {
  return MomentVector{std::vector<double>(vals)};
}

double reproduce(const MomentRealization& r, int k) {
  VectorXd v = r.vector;
  for (int i = 0; i < k; ++i) v = r.observable * v;
  return r.vector.dot(v);
}

}  // namespace

TEST_CASE("membership distinguishes the Hankel and shifted-Hankel cones") {
  CHECK(membership_Mn(mv({1, 1, 1, 1, 2})));
  CHECK(membership_Mn(mv({1, 1, 2, 4, 9})));
  CHECK(membership_Mn_plus(mv({1, 1, 2, 4, 9})));
  CHECK_FALSE(membership_Mn(mv({1, 0, -1})));
  // Hamburger yes, Stieltjes no
  CHECK(membership_Mn(mv({2, 1, 1, -1})));
  CHECK_FALSE(membership_Mn_plus(mv({2, 1, 1, -1})));
}

TEST_CASE("flat extension continues the recurrence of the leading block") {
  const MomentVector ext = flat_extension(mv({1, 0, 1}), 0.0);
  REQUIRE(ext.order() == 4);
  CHECK(ext[3] == 0.0);
  CHECK(ext[4] == doctest::Approx(1.0).epsilon(1e-14));

  // default odd moment for (1,1,2,4,9): shifted dot H^{-1} mu = 18
  const MomentVector ext2 = flat_extension(mv({1, 1, 2, 4, 9}));
  REQUIRE(ext2.order() == 6);
  CHECK(ext2[5] == doctest::Approx(18.0).epsilon(1e-11));

  CHECK_THROWS_AS(flat_extension(mv({1, 1, 1})), SingularHankelError);
  CHECK_THROWS_AS(flat_extension(mv({1, 0, 1, 0}), 0.5), ValidationError);
}

TEST_CASE("boundary sequence is in the closure but not exactly realizable") {
  const MomentVector m = mv({1, 1, 1, 1, 2});
  CHECK(membership_Mn(m));
  CHECK_THROWS_AS(realize_moments(m, false), SingularHankelError);
}

TEST_CASE("Hamburger-realizable sequence with no PSD realization") {
  const MomentVector m = mv({1, 1, 2, 4, 9});
  const MomentRealization r = realize_moments(m, false);
  for (int k = 0; k <= 4; ++k)
    CHECK(reproduce(r, k) == doctest::Approx(m[k]).epsilon(1e-9));
  // the shifted Hankel kernel pins the support to {0, 2}, which forces
  // m_4 = 8; so no nonnegative-support realization can exist
  CHECK_THROWS_AS(realize_moments(m, true), Error);
}

TEST_CASE("geometric moments realize as a single atom") {
  const MomentVector m = mv({1, 0.5, 0.25, 0.125, 0.0625});
  const MomentRealization r = realize_moments(m, true);
  CHECK(r.observable.rows() == 1);
  CHECK(r.observable(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.vector.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetric two-point sequence realizes as a spin flip") {
  const MomentVector m = mv({1, 0, 1, 0});
  const MomentRealization r = realize_moments(m, false);
  REQUIRE(r.observable.rows() == 2);
  CHECK(std::abs(r.observable(0, 0)) < 1e-10);
  CHECK(std::abs(r.observable(1, 1)) < 1e-10);
  CHECK(std::abs(r.observable(0, 1)) == doctest::Approx(1.0).epsilon(1e-10));
  for (int k = 0; k <= 3; ++k)
    CHECK(reproduce(r, k) == doctest::Approx(m[k]).epsilon(1e-9));
  // the representing observable is indefinite by necessity
  CHECK_THROWS_AS(realize_moments(m, true), Error);
}

TEST_CASE("random finite moment data roundtrips through the realization") {
  PhiloxRng rng(314159);
  for (int trial = 0; trial < 20; ++trial) {
    const int size = 2 + static_cast<int>(rng.next_u32() % 4);  // 2..5
    VectorXd w(size);
    for (int i = 0; i < size; ++i) w(i) = rng.uniform();
    w /= w.sum();
    MatrixXd x(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j <= i; ++j) x(i, j) = x(j, i) = rng.normal();

    const bool psd = trial % 2 == 0;
    if (psd) {
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(x);
      x += (0.1 - es.eigenvalues()(0)) * MatrixXd::Identity(size, size);
    }

    const int n = 6;
    MomentVector m;
    m.values.assign(n + 1, 0.0);
    MatrixXd pw = MatrixXd::Identity(size, size);
    for (int k = 0; k <= n; ++k) {
      m.values[k] = (w.asDiagonal() * pw).trace();
      pw = pw * x;
    }
    m.values[0] = 1.0;

    CAPTURE(trial);
    const MomentRealization r = realize_moments(m, psd);
    for (int k = 0; k <= n; ++k)
      CHECK(std::abs(reproduce(r, k) - m[k]) < 1e-8 * std::max(1.0, std::abs(m[k])));
    if (psd) {
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(r.observable);
      CHECK(es.eigenvalues()(0) > -1e-8);
    }
  }
}
