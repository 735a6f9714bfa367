#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcsl/stats.hpp"
#include "lcsl/types.hpp"
#include "oracles.hpp"

using namespace lcsl;

TEST_CASE("inverse normal CDF matches the bisection oracle") {
  CHECK(inverse_normal_cdf(0.5) == 0.0);
  CHECK(inverse_normal_cdf(0.95) == doctest::Approx(1.6448536).epsilon(1e-7));
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.9599640).epsilon(1e-7));

  CounterRng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double p = rng.uniform(1e-12, 1.0 - 1e-12);
    REQUIRE(std::abs(inverse_normal_cdf(p) - testing::bisect_icdf(p)) < 1e-10);
  }
  // tails
  for (double p : {1e-300, 1e-100, 1e-16, 1e-9, 1e-4}) {
    CHECK(std::abs(inverse_normal_cdf(p) - testing::bisect_icdf(p)) < 1e-9);
  }
}

TEST_CASE("quantile symmetry holds bit-exactly from above") {
  CounterRng rng(12);
  for (int i = 0; i < 500; ++i) {
    const double p = rng.uniform(0.5000001, 0.9999999);
    REQUIRE(inverse_normal_cdf(p) == -inverse_normal_cdf(1.0 - p));
  }
}

TEST_CASE("quantile is monotone") {
  double prev = inverse_normal_cdf(1e-6);
  for (double p = 1e-3; p < 0.999; p += 1e-3) {
    const double q = inverse_normal_cdf(p);
    REQUIRE(q > prev);
    prev = q;
  }
}

TEST_CASE("quantile domain errors") {
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), DomainError);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), DomainError);
  CHECK_THROWS_AS(inverse_normal_cdf(-0.2), DomainError);
  CHECK_THROWS_AS(inverse_normal_cdf(1.2), DomainError);
}

TEST_CASE("truncated normal: symmetric interval keeps the mean") {
  CounterRng rng(77);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_truncated_normal(1.0, 0.0, 2.0, 0.5, rng);
    REQUIRE(x >= 0.0);
    REQUIRE(x <= 2.0);
    sum += x;
  }
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("truncated normal: far-off mean piles mass at the near boundary") {
  CounterRng rng(78);
  double max_seen = 0.0;
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_truncated_normal(-10.0, 0.0, 2.0, 0.5, rng);
    REQUIRE(x >= 0.0);
    REQUIRE(x <= 2.0);
    max_seen = std::max(max_seen, x);
    sum += x;
  }
  CHECK(sum / n < 0.05);     // nearly everything hugs 0
  CHECK(max_seen < 0.5);
}

TEST_CASE("truncated normal: tiny sd collapses onto an interior mean") {
  CounterRng rng(79);
  for (int i = 0; i < 1000; ++i) {
    const double x = sample_truncated_normal(0.7, 0.0, 2.0, 1e-8, rng);
    REQUIRE(x == doctest::Approx(0.7).epsilon(1e-6));
  }
}

TEST_CASE("truncated normal rejects bad arguments") {
  CounterRng rng(80);
  CHECK_THROWS_AS(sample_truncated_normal(0.0, 1.0, 1.0, 0.5, rng), DomainError);
  CHECK_THROWS_AS(sample_truncated_normal(0.0, 2.0, 1.0, 0.5, rng), DomainError);
  CHECK_THROWS_AS(sample_truncated_normal(0.0, 0.0, 1.0, 0.0, rng), DomainError);
}

TEST_CASE("truncated normal variance under symmetric truncation") {
  // For N(1, 0.5^2) on [0, 2] the truncated sd is sd*sqrt(1 - 2b phi(b)/(2Phi(b)-1))
  // with b = 2; evaluate the closed form and compare empirically.
  const double b = 2.0;
  const double phi_b = std::exp(-0.5 * b * b) / std::sqrt(2.0 * 3.14159265358979323846);
  const double z = 2.0 * normal_cdf(b) - 1.0;
  const double sd_expected = 0.5 * std::sqrt(1.0 - 2.0 * b * phi_b / z);

  CounterRng rng(81);
  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_truncated_normal(1.0, 0.0, 2.0, 0.5, rng);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sumsq / n - mean * mean);
  CHECK(sd == doctest::Approx(sd_expected).epsilon(0.02));
}
