#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "onebit/channel.hpp"
#include "onebit/special_functions.hpp"
#include "oracles.hpp"

using onebit::binary_entropy;
using onebit::hbq;
using onebit::q_function;
using onebit::solve_hbq_threshold;

TEST_CASE("q_function matches the quadrature oracle") {
  // frozen from the adaptive-quadrature oracle below
  const double q1 = 0.15865525393145705;
  CHECK(oracles::q_reference(1.0) == doctest::Approx(q1).epsilon(1e-10));
  CHECK(static_cast<double>(q_function(1.0)) == doctest::Approx(q1).epsilon(1e-12));
  for (double x : {0.25, 0.5, 2.0, 3.5, 5.0}) {
    CHECK(static_cast<double>(q_function(x)) ==
          doctest::Approx(oracles::q_reference(x)).epsilon(1e-12));
  }
}

TEST_CASE("q_function basics") {
  CHECK(static_cast<double>(q_function(0.0)) == 0.5);
  // the far tail keeps a nonzero value instead of flushing early
  const long double tail = q_function(40.0);
  CHECK(tail > 0.0L);
  CHECK(tail < 1e-300L);
  CHECK_THROWS_AS(q_function(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  CHECK_THROWS_AS(q_function(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("q_function symmetry and monotonicity") {
  onebit::Rng rng({42, 0});
  for (int i = 0; i < 2000; ++i) {
    const double x = 16.0 * rng.next_unit() - 8.0;
    const long double sum = q_function(x) + q_function(-x);
    CHECK(std::fabs(static_cast<double>(sum - 1.0L)) <= 1e-12);
    const double y = x + 4.0 * rng.next_unit() + 1e-6;
    CHECK(q_function(x) > q_function(y));
  }
}

TEST_CASE("binary_entropy values") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  // frozen from the long-double oracle
  const double h011 = 0.499915958164528;
  CHECK(static_cast<double>(oracles::entropy_reference(0.11L)) ==
        doctest::Approx(h011).epsilon(1e-12));
  CHECK(binary_entropy(0.11) == doctest::Approx(h011).epsilon(1e-12));
}

TEST_CASE("binary_entropy symmetry and domain") {
  onebit::Rng rng({7, 1});
  for (int i = 0; i < 2000; ++i) {
    const double p = rng.next_unit();
    CHECK(binary_entropy(p) == doctest::Approx(binary_entropy(1.0 - p)).epsilon(1e-14));
    CHECK(binary_entropy(p) <= 1.0);
    CHECK(binary_entropy(p) >= 0.0);
  }
  // one-ulp clamp tolerates rounding from upstream computations
  CHECK(binary_entropy(std::nextafter(1.0, 2.0)) == 0.0);
  CHECK(binary_entropy(std::nextafter(0.0, -1.0)) == 0.0);
  CHECK_THROWS_AS(binary_entropy(1.0 + 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(-1e-9), std::invalid_argument);
  CHECK_THROWS_AS(binary_entropy(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("hbq endpoints and known values") {
  CHECK(hbq(0.0) == 1.0);
  CHECK(hbq(5.0) == doctest::Approx(0.1).epsilon(0.05));  // Hb(Q(sqrt(5))) ~ 0.1
  CHECK_THROWS_AS(hbq(-0.1), std::invalid_argument);
}

TEST_CASE("hbq equals the naive composition where that is stable") {
  for (double x = 0.0; x <= 30.0; x += 0.125) {
    const double naive =
        binary_entropy(static_cast<double>(q_function(std::sqrt(x))));
    CHECK(std::fabs(hbq(x) - naive) <= 1e-10);
  }
}

TEST_CASE("hbq stays continuous across the small-tail branch switch") {
  // Q(sqrt(x)) crosses 1e-15 near x = 63; both branches must agree there
  for (double x = 58.0; x <= 68.0; x += 0.01) {
    const long double p = q_function(std::sqrt(x));
    const long double direct = oracles::entropy_reference(p);
    CHECK(hbq(x) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-10));
  }
}

TEST_CASE("hbq is non-increasing and convex") {
  onebit::Rng rng({11, 2});
  for (int i = 0; i < 5000; ++i) {
    const double a = 60.0 * rng.next_unit();
    const double b = 60.0 * rng.next_unit();
    const double lo = std::min(a, b), hi = std::max(a, b);
    CHECK(hbq(lo) >= hbq(hi));
    const double lambda = rng.next_unit();
    const double mix = lambda * lo + (1.0 - lambda) * hi;
    CHECK(hbq(mix) <= lambda * hbq(lo) + (1.0 - lambda) * hbq(hi) + 1e-9);
  }
  // deep-tail inputs still decay monotonically
  CHECK(hbq(100.0) < hbq(80.0));
  CHECK(hbq(1e6) >= 0.0);
}

TEST_CASE("solve_hbq_threshold round trips") {
  for (double eps : {0.01, 0.05, 0.1, 0.3, 0.7}) {
    const double delta = solve_hbq_threshold(eps);
    CHECK(std::fabs(hbq(delta) - eps) <= 1e-9);
  }
  // Hb(Q(sqrt(5))) ~ 0.1, so the threshold for 0.1 sits near 5
  const double d = solve_hbq_threshold(0.1);
  CHECK(std::fabs(5.0 - d) / d <= 0.02);
  // exact round trip through a precomputed value
  const double eps = hbq(0.25);
  CHECK(solve_hbq_threshold(eps) == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("solve_hbq_threshold agrees with an independent bisection") {
  const double mine = solve_hbq_threshold(0.5);
  const double ref = oracles::hbq_threshold_reference(&onebit::hbq, 0.5, 1e-12);
  CHECK(mine == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("solve_hbq_threshold rejects bad arguments") {
  CHECK_THROWS_AS(solve_hbq_threshold(0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_hbq_threshold(1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_hbq_threshold(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(solve_hbq_threshold(1.5), std::invalid_argument);
}
