#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "lints/model.hpp"

using namespace lints;

namespace {
const ThroughputModel kUnit(1.0, 1.0 / 24.0);
const PowerModel kPaper(100.0, 88.0, 1.0 / 50.0);
}  // namespace

TEST_CASE("throughput curve hits hand-computed points") {
  CHECK(throughput_of_threads(kUnit, 0.0) == 0.0);
  CHECK(throughput_of_threads(kUnit, 24.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(throughput_of_threads(kUnit, 72.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(throughput_of_threads(kUnit, -1.0), std::domain_error);
}

TEST_CASE("thread inversion is the exact inverse") {
  CHECK(threads_of_throughput(kUnit, 0.0) == 0.0);
  CHECK(threads_of_throughput(kUnit, 0.5) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK_THROWS_AS(threads_of_throughput(kUnit, 1.0), std::domain_error);
  CHECK_THROWS_AS(threads_of_throughput(kUnit, -0.1), std::domain_error);

  for (double theta = 0.0; theta <= 64.0; theta += 0.5) {
    const double rho = throughput_of_threads(kUnit, theta);
    CHECK(std::abs(threads_of_throughput(kUnit, rho) - theta) <= 1e-9);
  }
}

TEST_CASE("power curve endpoints and saturation") {
  CHECK(power_of_threads(kPaper, 0.0) == 88.0);
  CHECK(power_of_threads(kPaper, 50.0) == doctest::Approx(88.0 + 144.0 / 13.0).epsilon(1e-12));
  const double near_max = power_of_threads(kPaper, 1e6);
  CHECK(near_max < 100.0);
  CHECK(near_max == doctest::Approx(100.0).epsilon(1e-3));
  CHECK_THROWS_AS(power_of_threads(kPaper, -2.0), std::domain_error);
}

TEST_CASE("both curves are strictly increasing") {
  double prev_rho = -1.0, prev_p = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double theta = 0.4 * i;
    const double rho = throughput_of_threads(kUnit, theta);
    const double p = power_of_threads(kPaper, theta);
    CHECK(rho > prev_rho);
    CHECK(p > prev_p);
    prev_rho = rho;
    prev_p = p;
  }
}

TEST_CASE("power-of-throughput matches the curve composition") {
  for (double limit : {0.25, 0.5, 0.75, 1.0}) {
    const ThroughputModel tm(limit, 1.0 / 24.0);
    CHECK(power_of_throughput_exact(kPaper, tm, 0.0) == kPaper.p_min_w);
    CHECK(power_of_throughput_exact(kPaper, tm, limit) == kPaper.p_max_w);
    for (int i = 1; i < 100; ++i) {
      const double rho = limit * i / 100.0;
      const double composed = power_of_threads(kPaper, threads_of_throughput(tm, rho));
      CHECK(std::abs(power_of_throughput_exact(kPaper, tm, rho) - composed) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(power_of_throughput_exact(kPaper, kUnit, 1.5), std::domain_error);
}

TEST_CASE("linear proxy: intercept, endpoint, midpoint") {
  CHECK(power_of_throughput_linear(kPaper, kUnit, 0.0) == 88.0);
  CHECK(power_of_throughput_linear(kPaper, kUnit, 1.0) == 100.0);
  CHECK(power_of_throughput_linear(kPaper, kUnit, 0.5) == doctest::Approx(94.0).epsilon(1e-12));
  CHECK_THROWS_AS(power_of_throughput_linear(kPaper, kUnit, -0.1), std::domain_error);
}

TEST_CASE("linear proxy agrees with the exact curve exactly at the endpoints") {
  for (double limit : {0.25, 0.5, 0.75}) {
    const ThroughputModel tm(limit, 1.0 / 24.0);
    CHECK(power_of_throughput_linear(kPaper, tm, 0.0) ==
          power_of_throughput_exact(kPaper, tm, 0.0));
    CHECK(power_of_throughput_linear(kPaper, tm, limit) ==
          power_of_throughput_exact(kPaper, tm, limit));
  }
}

TEST_CASE("exact curve is concave, hence sits above its linear chord") {
  for (double limit : {0.25, 0.5, 0.75, 1.0}) {
    const ThroughputModel tm(limit, 1.0 / 24.0);
    CHECK(power_curve_constant(kPaper, tm) >= 1.0);
    // numerical concavity: non-positive second differences at 100 points
    double prev = power_of_throughput_exact(kPaper, tm, 0.0);
    double prev_delta = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
      const double p = power_of_throughput_exact(kPaper, tm, limit * i / 100.0);
      const double delta = p - prev;
      CHECK(delta <= prev_delta + 1e-9);
      prev_delta = delta;
      prev = p;
    }
    for (int i = 0; i <= 100; ++i) {
      const double rho = limit * i / 100.0;
      CHECK(power_of_throughput_exact(kPaper, tm, rho) >=
            power_of_throughput_linear(kPaper, tm, rho) - 1e-9);
    }
  }
}

TEST_CASE("model validation rejects bad constants") {
  CHECK_THROWS(ThroughputModel(0.0, 1.0));
  CHECK_THROWS(ThroughputModel(1.0, -1.0));
  CHECK_THROWS(PowerModel(88.0, 100.0, 0.02));
  CHECK_THROWS(PowerModel(100.0, -1.0, 0.02));
}
