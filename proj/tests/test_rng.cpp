#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcsl/rng.hpp"

using namespace lcsl;

TEST_CASE("counter stream reproduces the canonical splitmix64 vectors") {
  CounterRng rng(1234567);
  CHECK(rng.next_u64() == 6457827717110365317ull);
  CHECK(rng.next_u64() == 3203168211198807973ull);
  CHECK(rng.next_u64() == 9817491932198370423ull);
  CHECK(rng.next_u64() == 4593380528125082431ull);
  CHECK(rng.next_u64() == 16408922859458223821ull);

  CounterRng zero(0);
  CHECK(zero.next_u64() == 16294208416658607535ull);
  CHECK(zero.next_u64() == 7960286522194355700ull);
  CHECK(zero.next_u64() == 487617019471545679ull);
}

TEST_CASE("derivation rule is fixed") {
  CHECK(derive_seed(42, 0) == 5006236285904387910ull);
  CHECK(derive_seed(42, 1) == 12234890524640051791ull);
  CHECK(derive_seed(0, 7) == 8409816773569330625ull);
  CHECK(CounterRng(42).derive(1).seed() == derive_seed(42, 1));
}

TEST_CASE("uniform conversion uses the top 53 bits") {
  CounterRng rng(42);
  CHECK(rng.uniform() == doctest::Approx(0.74156487877182331).epsilon(1e-16));
  CHECK(rng.uniform() == doctest::Approx(0.1599103928769201).epsilon(1e-16));
  CHECK(rng.uniform() == doctest::Approx(0.27860113025513866).epsilon(1e-16));
}

TEST_CASE("normal draw consumes exactly two uniforms") {
  CounterRng a(99);
  const double z = a.normal();
  CHECK(z == doctest::Approx(0.76333141646794245).epsilon(1e-14));

  CounterRng b(99);
  b.uniform();
  b.uniform();
  CounterRng c(99);
  c.normal();
  CHECK(b.next_u64() == c.next_u64());
}

TEST_CASE("same seed gives an identical stream; derived streams differ") {
  CounterRng a(7), b(7);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

  CounterRng parent(7);
  CHECK(parent.derive(0).seed() != parent.derive(1).seed());
  // derivation ignores how much the parent has consumed
  parent.next_u64();
  CHECK(parent.derive(1).seed() == CounterRng(7).derive(1).seed());
}

TEST_CASE("uniform moments are sane") {
  CounterRng rng(2024);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("normal moments are sane") {
  CounterRng rng(2025);
  const int n = 200000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 0.01);
  CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.02));
}
