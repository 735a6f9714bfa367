#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcsl/kernel.hpp"
#include "lcsl/rng.hpp"
#include "oracles.hpp"

using namespace lcsl;

namespace {

Hyperparameters unit_hp(Index d, double sigma_n2 = 0.0) {
  Hyperparameters hp;
  hp.sigma_f2 = 1.0;
  hp.theta = Vector::Ones(d);
  hp.sigma_n2 = sigma_n2;
  return hp;
}

}  // namespace

TEST_CASE("kernel at zero distance") {
  const Vector x = Vector::Constant(3, 0.4);
  CHECK(kernel_eval(x, x, unit_hp(3, 0.1), true) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(kernel_eval(x, x, unit_hp(3, 0.1), false) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kernel closed form at unit squared distance over theta") {
  Vector a(1), b(1);
  a << 0.0;
  b << std::sqrt(2.0);
  CHECK(kernel_eval(a, b, unit_hp(1), false) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(kernel_eval(a, b, unit_hp(1), false) ==
        doctest::Approx(0.367879441).epsilon(1e-9));
}

TEST_CASE("huge length-scales erase distance") {
  Hyperparameters hp = unit_hp(2);
  hp.theta = Vector::Constant(2, 1e300);
  Vector a(2), b(2);
  a << -5.0, 3.0;
  b << 4.0, -8.0;
  CHECK(kernel_eval(a, b, hp, false) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel argument checking") {
  Vector a(2), b(3);
  a.setZero();
  b.setZero();
  CHECK_THROWS_AS(kernel_eval(a, b, unit_hp(2), false), ShapeError);
  Vector c(2);
  c << std::nan(""), 0.0;
  CHECK_THROWS_AS(kernel_eval(a, c, unit_hp(2), false), DomainError);
}

TEST_CASE("hyperparameter validation") {
  Hyperparameters hp = unit_hp(2);
  CHECK_NOTHROW(validate(hp));
  hp.sigma_f2 = 0.0;
  CHECK_THROWS_AS(validate(hp), DomainError);
  hp = unit_hp(2);
  hp.theta[1] = -1.0;
  CHECK_THROWS_AS(validate(hp), DomainError);
  hp = unit_hp(2);
  hp.sigma_n2 = -1e-9;
  CHECK_THROWS_AS(validate(hp), DomainError);
}

TEST_CASE("1x1 gram and duplicate rows") {
  Matrix X(1, 2);
  X << 0.3, 0.9;
  Hyperparameters hp = unit_hp(2, 0.25);
  hp.sigma_f2 = 2.0;
  const Matrix K1 = gram_matrix(X, hp);
  CHECK(K1.rows() == 1);
  CHECK(K1(0, 0) == doctest::Approx(2.25).epsilon(1e-15));

  Matrix X2(2, 2);
  X2 << 0.3, 0.9, 0.3, 0.9;
  hp.sigma_n2 = 0.0;
  const Matrix K2 = gram_matrix(X2, hp);
  CHECK(K2(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(K2(0, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(K2(1, 0) == K2(0, 1));
}

TEST_CASE("gram matches the pairwise kernel oracle") {
  CounterRng rng(5);
  Matrix X(5, 3);
  for (Index i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-1.0, 1.0);
  Hyperparameters hp = testing::random_hyperparameters(3, rng);
  const Matrix K = gram_matrix(X, hp);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) {
      const double expected = kernel_eval(X.row(i).transpose(),
                                          X.row(j).transpose(), hp, i == j);
      REQUIRE(K(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("gram is exactly symmetric") {
  CounterRng rng(6);
  Matrix X(20, 4);
  for (Index i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-2.0, 2.0);
  const Matrix K = gram_matrix(X, testing::random_hyperparameters(4, rng));
  REQUIRE((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cross covariance matches kernel_eval and decays") {
  CounterRng rng(7);
  Matrix X(3, 2);
  for (Index i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform();
  Hyperparameters hp = testing::random_hyperparameters(2, rng);
  Vector x_star(2);
  x_star << rng.uniform(), rng.uniform();

  const Vector k = cross_covariance(X, x_star, hp);
  for (Index i = 0; i < 3; ++i) {
    REQUIRE(k[i] ==
            doctest::Approx(kernel_eval(X.row(i).transpose(), x_star, hp, false))
                .epsilon(1e-14));
  }

  // training row hit exactly, no nugget even when sigma_n2 > 0
  hp.sigma_n2 = 0.3;
  const Vector k_hit = cross_covariance(X, X.row(1).transpose(), hp);
  CHECK(k_hit[1] == doctest::Approx(hp.sigma_f2).epsilon(1e-15));

  // far query point decays to ~0
  const Vector far = Vector::Constant(2, 1e4);
  const Vector k_far = cross_covariance(X, far, hp);
  CHECK(k_far.maxCoeff() < 1e-6 * hp.sigma_f2);
}

TEST_CASE("kernel separates into covariate and dose factors") {
  CounterRng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Index p = 3;
    Hyperparameters hp = testing::random_hyperparameters(p + 1, rng);
    hp.sigma_n2 = 0.0;
    Vector a(p + 1), b(p + 1);
    for (Index i = 0; i <= p; ++i) {
      a[i] = rng.uniform(-1.0, 1.0);
      b[i] = rng.uniform(-1.0, 1.0);
    }
    const double joint = kernel_eval(a, b, hp, false);

    Matrix row(1, p);
    row = b.head(p).transpose();
    const double cov_factor =
        sq_exp_similarity(row, a.head(p), hp.theta.head(p))[0];
    const double dd = a[p] - b[p];
    const double dose_factor = std::exp(-0.5 * dd * dd / hp.theta[p]);
    REQUIRE(joint == doctest::Approx(hp.sigma_f2 * cov_factor * dose_factor)
                         .epsilon(1e-12));
  }
}
