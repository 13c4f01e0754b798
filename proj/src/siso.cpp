#include "onebit/siso.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "onebit/special_functions.hpp"

namespace onebit {

namespace {

constexpr double kPi = std::numbers::pi;

double checked_gain(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0) throw std::invalid_argument(what);
  return value;
}

void check_theta(double theta, const char* what) {
  // a few ulp of slack: pi/4 itself is a valid boundary value
  if (!std::isfinite(theta) || std::fabs(theta) > kPi / 4.0 + 1e-12)
    throw std::invalid_argument(what);
}

// 2 - hbq(x(1 - sin 2theta)) - hbq(x(1 + sin 2theta)); the arms are clamped
// at zero to absorb sin() rounding at |theta| = pi/4.
double rotated_qpsk_capacity(double eff_snr, double theta) {
  const double s = std::sin(2.0 * theta);
  return 2.0 - hbq(std::max(0.0, eff_snr * (1.0 - s))) -
         hbq(std::max(0.0, eff_snr * (1.0 + s)));
}

}  // namespace

PhaseCodebook build_phase_codebook(int bits) {
  if (bits < 1 || bits > 30)
    throw std::invalid_argument("build_phase_codebook: bits must be in [1, 30]");
  const std::size_t n = std::size_t{1} << bits;
  const double cell = kPi / std::ldexp(2.0, bits);  // pi / 2^(B+1)
  PhaseCodebook cb;
  cb.bits = bits;
  cb.centers.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    cb.centers[i] = (static_cast<double>(i) + 0.5) * cell;
  return cb;
}

double mod_half_pi(double angle) {
  const double m = kPi / 2.0;
  double r = angle - m * std::floor(angle / m);
  if (r >= m) r -= m;  // rounding at the upper boundary
  if (r < 0.0) r = 0.0;
  return r;
}

PhaseFeedback quantize_phase(double angle, const PhaseCodebook& cb) {
  if (!std::isfinite(angle))
    throw std::invalid_argument("quantize_phase: angle must be finite");
  if (cb.centers.empty())
    throw std::invalid_argument("quantize_phase: empty codebook");
  const double residue = mod_half_pi(angle);
  const double cell = kPi / std::ldexp(2.0, cb.bits);
  const std::size_t last = cb.centers.size() - 1;
  std::size_t idx = std::min(last, static_cast<std::size_t>(residue / cell));
  // a residue exactly on a cell edge is equidistant from two centers; take
  // the lower index
  if (idx > 0 && std::fabs(residue - cb.centers[idx - 1]) <=
                     std::fabs(residue - cb.centers[idx]))
    --idx;
  return {static_cast<int>(idx), cb.centers[idx] - residue};
}

double capacity_siso_fb(TransmitPower pt, double h_mag_sq, double theta) {
  checked_gain(h_mag_sq, "capacity_siso_fb: h_mag_sq must be >= 0");
  check_theta(theta, "capacity_siso_fb: |theta| must not exceed pi/4");
  return rotated_qpsk_capacity(pt.linear * h_mag_sq, theta);
}

double capacity_siso_fb_lower(TransmitPower pt, double h_mag_sq, double theta) {
  checked_gain(h_mag_sq, "capacity_siso_fb_lower: h_mag_sq must be >= 0");
  check_theta(theta, "capacity_siso_fb_lower: |theta| must not exceed pi/4");
  const double x = pt.linear * h_mag_sq;
  const double s = std::sin(2.0 * std::fabs(theta));
  return 2.0 * (1.0 - hbq(std::max(0.0, x * (1.0 - s))));
}

double capacity_siso_perfect(TransmitPower pt, double h_mag_sq) {
  checked_gain(h_mag_sq, "capacity_siso_perfect: h_mag_sq must be >= 0");
  return 2.0 * (1.0 - hbq(pt.linear * h_mag_sq));
}

double capacity_siso_no_csit(TransmitPower pt, std::complex<double> h) {
  const double mag_sq = std::norm(h);
  checked_gain(mag_sq, "capacity_siso_no_csit: channel must be finite");
  // un-rotated QPSK: the effective phase error is the raw residue offset
  // from the constellation diagonal
  const double theta = mod_half_pi(std::arg(h)) - kPi / 4.0;
  return rotated_qpsk_capacity(pt.linear * mag_sq, theta);
}

PhasePowerLoss avg_power_loss_phase(int bits) {
  if (bits < 1 || bits > 60)
    throw std::invalid_argument("avg_power_loss_phase: bits must be in [1, 60]");
  const double w = kPi / std::ldexp(4.0, bits);  // pi / 2^(B+2)
  PhasePowerLoss loss;
  loss.average = 1.0 - std::sin(w) * std::sin(w) / w;
  loss.linearized = 1.0 - w;
  loss.loose = 1.0 - std::ldexp(1.0, -bits);
  loss.worst_case = 1.0 - std::sin(2.0 * w);
  return loss;
}

}  // namespace onebit
