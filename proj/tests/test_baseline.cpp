#include <cmath>

#include "doctest.h"
#include "ghzmd/angles.hpp"
#include "ghzmd/baseline.hpp"
#include "ghzmd/error.hpp"

using namespace ghzmd;

TEST_CASE("e1 values") {
  CHECK(e1(0.0) == 1.0);
  CHECK(e1(kPi / 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(e1(kPi) == doctest::Approx(-1.0));
  CHECK(e1(kPi / 4) == doctest::Approx(1.0 - (kPi / 2 - 1.0) / kPi));
  CHECK(e1(kPi / 4) == doctest::Approx(0.81831).epsilon(1e-5));
}

TEST_CASE("e1 folds about pi and has period 2pi") {
  for (double phi = 0.0; phi < kPi; phi += 0.0137) {
    CHECK(e1(kTwoPi - phi) == doctest::Approx(e1(phi)).epsilon(1e-12));
    CHECK(e1(-phi) == doctest::Approx(e1(phi)).epsilon(1e-12));
    CHECK(e1(phi + kTwoPi) == doctest::Approx(e1(phi)).epsilon(1e-12));
  }
}

TEST_CASE("e1 is nonincreasing on [0, pi]") {
  double last = e1(0.0);
  for (int i = 1; i <= 10000; ++i) {
    const double v = e1(kPi * i / 10000);
    CHECK(v <= last + 1e-15);
    last = v;
  }
}

TEST_CASE("dominance over cos") {
  const DominanceResult d = dominance_check(10000);
  CHECK(d.holds);
  CHECK(d.endpoints_exact);
  CHECK(d.min_slack >= -1e-12);
  CHECK_THROWS_AS(dominance_check(50), Error);
}

TEST_CASE("mixture recovers a pure e1 target") {
  const MixtureSolution s = mixture_decompose(3, 600, [](double phi) { return e1(phi); });
  REQUIRE(s.weights.size() == 4);
  CHECK(s.weights[0].multiplier == 1);
  CHECK(s.weights[0].weight == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.residual < 1e-9);
}

TEST_CASE("mixture toward cos") {
  double last = 1e9;
  for (int m : {1, 2, 5, 10}) {
    const MixtureSolution s = mixture_decompose(m, 2000);
    REQUIRE(s.weights.size() == static_cast<std::size_t>(m + 1));
    double sum = 0.0;
    for (std::size_t i = 0; i < s.weights.size(); ++i) {
      CHECK(s.weights[i].weight >= 0.0);
      CHECK(s.weights[i].multiplier == static_cast<int>(2 * i + 1));
      sum += s.weights[i].weight;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
    CHECK(s.least_squares <= last + 1e-12);
    last = s.least_squares;
  }
}

TEST_CASE("mixture argument checks") {
  CHECK_THROWS_AS(mixture_decompose(0, 100), Error);
  CHECK_THROWS_AS(mixture_decompose(5, 20), Error);
}
