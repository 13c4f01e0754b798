#include "onebit/dmc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "onebit/special_functions.hpp"

namespace onebit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

void validate_dmc(const DmcModel& dmc, const char* where) {
  for (const auto& row : dmc.transition) {
    double sum = 0.0;
    for (double t : row) {
      if (!(t >= 0.0) || t > 1.0 + 1e-12)
        throw std::invalid_argument(std::string(where) + ": transition entries must lie in [0, 1]");
      sum += t;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      throw std::invalid_argument(std::string(where) + ": rows must sum to 1");
  }
}

void validate_input(const InputDistribution& p, const char* where) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0))
      throw std::invalid_argument(std::string(where) + ": input probabilities must be >= 0");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(where) + ": input distribution must sum to 1");
}

}  // namespace

DmcModel build_dmc(double a_sq, double theta) {
  if (!std::isfinite(a_sq) || a_sq < 0.0)
    throw std::invalid_argument("build_dmc: a_sq must be >= 0");
  if (!std::isfinite(theta) || std::fabs(theta) > kPi / 4.0 + 1e-12)
    throw std::invalid_argument("build_dmc: |theta| must not exceed pi/4");
  const double amplitude = std::sqrt(a_sq);
  DmcModel dmc;
  for (int k = 0; k < 4; ++k) {
    const double angle = k * (kPi / 2.0) + kPi / 4.0 + theta;
    // noise per real dimension has variance 1/2, so the margin enters Q
    // scaled by sqrt(2); Q(-m) = P[sign stays positive] avoids cancellation
    const double re_plus = static_cast<double>(
        q_function(-std::numbers::sqrt2 * amplitude * std::cos(angle)));
    const double im_plus = static_cast<double>(
        q_function(-std::numbers::sqrt2 * amplitude * std::sin(angle)));
    dmc.transition[k][0] = re_plus * im_plus;                  // 1+j
    dmc.transition[k][1] = re_plus * (1.0 - im_plus);          // 1-j
    dmc.transition[k][2] = (1.0 - re_plus) * im_plus;          // -1+j
    dmc.transition[k][3] = (1.0 - re_plus) * (1.0 - im_plus);  // -1-j
  }
  return dmc;
}

double mutual_information(const DmcModel& dmc, const InputDistribution& input) {
  validate_dmc(dmc, "mutual_information");
  validate_input(input, "mutual_information");
  std::array<double, 4> marginal{};
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k)
      marginal[r] += input[k] * dmc.transition[k][r];
  double mi = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (input[k] <= 0.0) continue;
    for (int r = 0; r < 4; ++r) {
      const double t = dmc.transition[k][r];
      if (t <= 0.0) continue;
      mi += input[k] * t * std::log2(t / marginal[r]);
    }
  }
  return mi;
}

BlahutArimotoResult blahut_arimoto(const DmcModel& dmc, double tol,
                                   int max_iters) {
  validate_dmc(dmc, "blahut_arimoto");
  if (!(tol > 0.0))
    throw std::invalid_argument("blahut_arimoto: tol must be > 0");
  InputDistribution p = kUniformInput;
  for (int iter = 1; iter <= max_iters; ++iter) {
    std::array<double, 4> marginal{};
    for (int r = 0; r < 4; ++r)
      for (int k = 0; k < 4; ++k)
        marginal[r] += p[k] * dmc.transition[k][r];
    // per-input divergence D(T_k || marginal), in nats
    std::array<double, 4> div{};
    for (int k = 0; k < 4; ++k) {
      double d = 0.0;
      for (int r = 0; r < 4; ++r) {
        const double t = dmc.transition[k][r];
        if (t <= 0.0 || marginal[r] <= 0.0) continue;
        d += t * std::log(t / marginal[r]);
      }
      div[k] = d;
    }
    double lower = 0.0;   // I(p) = sum p_k D_k
    double upper = div[0];  // capacity <= max_k D_k
    for (int k = 0; k < 4; ++k) {
      lower += p[k] * div[k];
      if (div[k] > upper) upper = div[k];
    }
    if (upper - lower <= tol * kLn2)
      return {lower / kLn2, p, iter};
    // multiplicative update, normalized against the largest exponent
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
      p[k] *= std::exp(div[k] - upper);
      total += p[k];
    }
    for (double& v : p) v /= total;
  }
  throw std::runtime_error("blahut_arimoto: did not converge within the iteration cap");
}

}  // namespace onebit
