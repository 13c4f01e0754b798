#include "onebit/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace onebit {

namespace {

constexpr long double kLn2 = std::numbers::ln2_v<long double>;
constexpr long double kSqrt2 = std::numbers::sqrt2_v<long double>;

// Below this tail probability the (1-p) term of the entropy carries no
// information at double precision; the small-p expansion takes over. Both
// branches agree to better than 10 digits at the crossover.
constexpr long double kSmallTail = 1e-15L;

long double entropy_bits(long double p) {
  if (p <= 0.0L || p >= 1.0L) return 0.0L;
  return -(p * std::log2(p) + (1.0L - p) * std::log1p(-p) / kLn2);
}

}  // namespace

long double q_function(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("q_function: input must be finite");
  return 0.5L * std::erfc(static_cast<long double>(x) / kSqrt2);
}

double binary_entropy(double p) {
  if (!std::isfinite(p))
    throw std::invalid_argument("binary_entropy: p must be finite");
  if (p < 0.0) {
    if (p < std::nextafter(0.0, -1.0))
      throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
    p = 0.0;
  } else if (p > 1.0) {
    if (p > std::nextafter(1.0, 2.0))
      throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
    p = 1.0;
  }
  return static_cast<double>(entropy_bits(static_cast<long double>(p)));
}

double hbq(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::invalid_argument("hbq: requires finite x >= 0");
  const long double p = q_function(std::sqrt(x));
  if (p >= kSmallTail) return static_cast<double>(entropy_bits(p));
  // p underflowed even extended precision: the entropy is far below the
  // smallest double, so 0 is the correctly rounded result.
  if (p <= 0.0L) return 0.0;
  // Hb(p) = p*(log2(1/p) + 1/ln2) + O(p^2 log p)
  const long double lp = std::log(p);
  return static_cast<double>(p * ((1.0L - lp) / kLn2));
}

double solve_hbq_threshold(double eps) {
  if (!std::isfinite(eps) || eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("solve_hbq_threshold: eps must lie in (0, 1)");
  // hbq(0) = 1 > eps; grow the bracket until the tail falls below eps.
  double hi = 1.0;
  while (hbq(hi) > eps) {
    hi *= 2.0;
    if (hi > 0x1p60) throw std::runtime_error("solve_hbq_threshold: bracket growth failed");
  }
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hbq(mid) > eps) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * std::max(1.0, hi)) break;
  }
  const double root = 0.5 * (lo + hi);
  if (std::fabs(hbq(root) - eps) > 1e-10)
    throw std::runtime_error("solve_hbq_threshold: bisection did not converge");
  return root;
}

}  // namespace onebit
