#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "onebit/channel.hpp"
#include "onebit/dmc.hpp"
#include "onebit/miso.hpp"
#include "onebit/siso.hpp"
#include "onebit/special_functions.hpp"
#include "oracles.hpp"

using namespace onebit;

namespace {
constexpr double kPi = std::numbers::pi;
// input k lands in quadrant column map for theta = 0
constexpr int kQuadrant[4] = {0, 2, 3, 1};
}  // namespace

TEST_CASE("build_dmc degenerate and saturated channels") {
  const DmcModel pure_noise = build_dmc(0.0, 0.0);
  for (const auto& row : pure_noise.transition)
    for (double t : row) CHECK(t == doctest::Approx(0.25).epsilon(1e-15));

  const DmcModel strong = build_dmc(100.0, 0.0);
  for (int k = 0; k < 4; ++k) {
    CHECK(strong.transition[k][kQuadrant[k]] == doctest::Approx(1.0).epsilon(1e-9));
    for (int r = 0; r < 4; ++r)
      if (r != kQuadrant[k]) CHECK(strong.transition[k][r] < 1e-10);
  }
  CHECK_THROWS_AS(build_dmc(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_dmc(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("per-dimension flip probability matches the tail oracle") {
  // a_sq = 2, theta = 0: margin sqrt(2)*A*cos(pi/4) = sqrt(2)
  const double flip = oracles::q_reference(std::sqrt(2.0));
  CHECK(flip == doctest::Approx(0.078649603525143).epsilon(1e-10));
  const DmcModel dmc = build_dmc(2.0, 0.0);
  CHECK(dmc.transition[0][0] == doctest::Approx((1 - flip) * (1 - flip)).epsilon(1e-10));
  CHECK(dmc.transition[0][1] == doctest::Approx((1 - flip) * flip).epsilon(1e-10));
  CHECK(dmc.transition[0][2] == doctest::Approx(flip * (1 - flip)).epsilon(1e-10));
  CHECK(dmc.transition[0][3] == doctest::Approx(flip * flip).epsilon(1e-10));
}

TEST_CASE("rows are stochastic for random parameters") {
  Rng rng({55, 0});
  for (int i = 0; i < 1000; ++i) {
    const double a = 50.0 * rng.next_unit();
    const double theta = (kPi / 4.0) * (2.0 * rng.next_unit() - 1.0);
    const DmcModel dmc = build_dmc(a, theta);
    for (const auto& row : dmc.transition) {
      double sum = 0.0;
      for (double t : row) {
        CHECK(t >= 0.0);
        sum += t;
      }
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("cyclic input relabeling permutes outputs consistently") {
  const DmcModel dmc = build_dmc(7.0, 0.13);
  // shifting the input by one quadrant sends output column r to sigma(r)
  constexpr int kSigma[4] = {2, 0, 3, 1};
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 4; ++r)
      CHECK(dmc.transition[k + 1][kSigma[r]] ==
            doctest::Approx(dmc.transition[k][r]).epsilon(1e-12));
}

TEST_CASE("mutual information basics") {
  CHECK(mutual_information(build_dmc(0.0, 0.0), kUniformInput) ==
        doctest::Approx(0.0).epsilon(1e-15));
  // noiseless 4-ary permutation channel carries 2 bits
  DmcModel perm{};
  for (int k = 0; k < 4; ++k) perm.transition[k][kQuadrant[k]] = 1.0;
  CHECK(mutual_information(perm, kUniformInput) == doctest::Approx(2.0).epsilon(1e-15));

  DmcModel bad = perm;
  bad.transition[0][0] = 0.7;
  CHECK_THROWS_AS(mutual_information(bad, kUniformInput), std::invalid_argument);
  CHECK_THROWS_AS(mutual_information(perm, InputDistribution{0.5, 0.5, 0.5, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("uniform-input mutual information equals the closed form") {
  const TransmitPower unit = TransmitPower::from_linear(1.0);
  Rng rng({56, 0});
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = 50.0 * rng.next_unit();
    const double theta = (kPi / 4.0) * (2.0 * rng.next_unit() - 1.0);
    const double mi = mutual_information(build_dmc(a, theta), kUniformInput);
    const double closed = capacity_siso_fb(unit, a, theta);
    worst = std::max(worst, std::fabs(mi - closed));
  }
  CHECK(worst < 1e-9);
  // the specific spot checks used elsewhere in the library docs
  CHECK(mutual_information(build_dmc(10.0, kPi / 16.0), kUniformInput) ==
        doctest::Approx(capacity_siso_fb(unit, 10.0, kPi / 16.0)).epsilon(1e-12));
  CHECK(mutual_information(build_dmc(32.0, kPi / 16.0), kUniformInput) ==
        doctest::Approx(capacity_miso_fb(TransmitPower::from_linear(10.0), 4.0,
                                         0.8, kPi / 16.0)).epsilon(1e-12));
}

TEST_CASE("blahut_arimoto on symmetric channels") {
  const BlahutArimotoResult zero = blahut_arimoto(build_dmc(0.0, 0.0), 1e-10);
  CHECK(zero.capacity == doctest::Approx(0.0).epsilon(1e-12));

  const BlahutArimotoResult ba = blahut_arimoto(build_dmc(4.0, 0.0), 1e-10);
  CHECK(ba.capacity ==
        doctest::Approx(capacity_siso_perfect(TransmitPower::from_linear(4.0), 1.0))
            .epsilon(1e-6));
  for (double p : ba.optimum) CHECK(p == doctest::Approx(0.25).epsilon(1e-6));

  // rotated case: uniform input stays optimal
  const DmcModel rotated = build_dmc(10.0, kPi / 16.0);
  const double mi = mutual_information(rotated, kUniformInput);
  const BlahutArimotoResult rba = blahut_arimoto(rotated, 1e-10);
  CHECK(rba.capacity - mi < 1e-8);
  CHECK(rba.capacity > mi - 1e-8);
}

TEST_CASE("blahut_arimoto maximizes over asymmetric channels") {
  // a lopsided channel where the optimum is far from uniform
  DmcModel skew{};
  skew.transition[0] = {0.97, 0.01, 0.01, 0.01};
  skew.transition[1] = {0.01, 0.97, 0.01, 0.01};
  skew.transition[2] = {0.25, 0.25, 0.25, 0.25};
  skew.transition[3] = {0.25, 0.25, 0.25, 0.25};
  const BlahutArimotoResult ba = blahut_arimoto(skew, 1e-10);
  CHECK(ba.iterations > 1);
  CHECK(ba.capacity >= mutual_information(skew, kUniformInput) - 1e-10);
  Rng rng({57, 0});
  for (int i = 0; i < 200; ++i) {
    InputDistribution p{};
    double sum = 0.0;
    for (double& v : p) {
      v = rng.next_unit();
      sum += v;
    }
    for (double& v : p) v /= sum;
    CHECK(ba.capacity >= mutual_information(skew, p) - 1e-8);
  }
  CHECK(ba.capacity >= mutual_information(skew, ba.optimum) - 1e-8);

  CHECK_THROWS_AS(blahut_arimoto(skew, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(blahut_arimoto(skew, 1e-12, 1), std::runtime_error);
}

TEST_CASE("blahut_arimoto capacity grows with received power") {
  double prev = -1.0;
  for (double a : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double cap = blahut_arimoto(build_dmc(a, 0.1), 1e-10).capacity;
    CHECK(cap >= prev - 1e-9);
    prev = cap;
  }
}
