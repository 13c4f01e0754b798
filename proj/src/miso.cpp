#include "onebit/miso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "onebit/special_functions.hpp"

namespace onebit {

DirectionCodebook build_rvq_codebook(RngStream stream, int nt, int bits) {
  if (nt < 2)
    throw std::invalid_argument("build_rvq_codebook: nt must be >= 2");
  if (bits < 1 || bits > 20)
    throw std::invalid_argument("build_rvq_codebook: bits must be in [1, 20]");
  const std::size_t count = std::size_t{1} << bits;
  DirectionCodebook cb;
  cb.bits = bits;
  cb.nt = nt;
  cb.entries.resize(count * static_cast<std::size_t>(nt));
  Rng rng(stream);
  for (std::size_t i = 0; i < count; ++i) {
    auto* row = cb.entries.data() + i * static_cast<std::size_t>(nt);
    double norm_sq = 0.0;
    for (int j = 0; j < nt; ++j) {
      row[j] = rng.next_cgauss();
      norm_sq += std::norm(row[j]);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int j = 0; j < nt; ++j) row[j] *= inv;
  }
  return cb;
}

DirectionSelection select_direction(std::span<const std::complex<double>> h,
                                    const DirectionCodebook& cb) {
  if (h.size() != static_cast<std::size_t>(cb.nt))
    throw std::invalid_argument("select_direction: channel length != codebook nt");
  double h_norm_sq = 0.0;
  for (const auto& c : h) h_norm_sq += std::norm(c);
  if (!(h_norm_sq > 0.0))
    throw std::invalid_argument("select_direction: zero channel vector");

  const std::size_t count = cb.size();
  std::size_t best = 0;
  double best_mag_sq = -1.0;
  std::complex<double> best_inner;
  for (std::size_t i = 0; i < count; ++i) {
    const auto* v = cb.entries.data() + i * static_cast<std::size_t>(cb.nt);
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      // conj(h[j]) * v[j]
      re += h[j].real() * v[j].real() + h[j].imag() * v[j].imag();
      im += h[j].real() * v[j].imag() - h[j].imag() * v[j].real();
    }
    const double mag_sq = re * re + im * im;
    if (mag_sq > best_mag_sq) {
      best_mag_sq = mag_sq;
      best = i;
      best_inner = {re, im};
    }
  }
  DirectionSelection sel;
  sel.index = static_cast<int>(best);
  sel.cos2_beta = std::min(1.0, best_mag_sq / h_norm_sq);
  sel.residual_phase = std::arg(best_inner);
  return sel;
}

PhaseFeedback quantize_residual_phase(double residual_phase, int b2) {
  return quantize_phase(residual_phase, build_phase_codebook(b2));
}

MisoFeedback quantize_channel(std::span<const std::complex<double>> h,
                              const DirectionCodebook& directions,
                              const PhaseCodebook& phases) {
  const DirectionSelection sel = select_direction(h, directions);
  const PhaseFeedback pf = quantize_phase(sel.residual_phase, phases);
  return {sel.index, pf.index, sel.cos2_beta, pf.theta};
}

namespace {

double checked_cos2_beta(double cos2_beta) {
  if (!std::isfinite(cos2_beta) || cos2_beta < -1e-12 || cos2_beta > 1.0 + 1e-12)
    throw std::invalid_argument("capacity_miso: cos2_beta must lie in [0, 1]");
  return std::clamp(cos2_beta, 0.0, 1.0);
}

}  // namespace

double capacity_miso_fb(TransmitPower pt, double h_norm_sq, double cos2_beta,
                        double theta) {
  return capacity_siso_fb(pt, h_norm_sq * checked_cos2_beta(cos2_beta), theta);
}

double capacity_miso_fb_lower(TransmitPower pt, double h_norm_sq,
                              double cos2_beta, double theta) {
  return capacity_siso_fb_lower(pt, h_norm_sq * checked_cos2_beta(cos2_beta),
                                theta);
}

double capacity_miso_perfect(TransmitPower pt, double h_norm_sq) {
  return capacity_siso_perfect(pt, h_norm_sq);
}

PowerLossBound power_loss_bound(int nt, int b1, int b2) {
  if (nt < 2) throw std::invalid_argument("power_loss_bound: nt must be >= 2");
  if (b1 < 1 || b2 < 1 || b1 > 64 || b2 > 64)
    throw std::invalid_argument("power_loss_bound: bits must be in [1, 64]");
  const double factor =
      (1.0 - std::exp2(-static_cast<double>(b1) / (nt - 1))) *
      (1.0 - std::exp2(-static_cast<double>(b2)));
  return {factor, power_loss_db(factor)};
}

FeedbackBudget feedback_budget_satisfied(int nt, int b1, int b2,
                                         TransmitPower pt, double epsilon) {
  FeedbackBudget budget;
  budget.delta = solve_hbq_threshold(epsilon);
  budget.bound = power_loss_bound(nt, b1, b2).factor;
  budget.required = budget.delta / (pt.linear * nt);
  budget.margin = budget.bound - budget.required;
  budget.satisfied = budget.margin >= 0.0;
  return budget;
}

}  // namespace onebit
