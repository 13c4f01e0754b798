#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "onebit/channel.hpp"
#include "onebit/siso.hpp"

// Limited feedback beamforming over the one-bit quantized MISO channel.
// The feedback budget is split: B1 bits pick a direction from a random
// vector quantization (RVQ) codebook, B2 bits quantize the residual phase
// of the equivalent channel h*v (one-bit slicing is phase sensitive, so
// the residual phase must be fed back too). Codebooks are immutable once
// built and safe to share across threads.

namespace onebit {

// 2^bits unit-norm complex vectors of length nt, drawn isotropically.
struct DirectionCodebook {
  int bits = 0;
  int nt = 0;
  std::vector<std::complex<double>> entries;  // row-major, size() * nt

  std::size_t size() const { return nt > 0 ? entries.size() / nt : 0; }
  std::span<const std::complex<double>> vec(std::size_t i) const {
    return {entries.data() + i * static_cast<std::size_t>(nt),
            static_cast<std::size_t>(nt)};
  }
};

// Requires nt >= 2 and 1 <= bits <= 20 (2^20 vectors is the memory budget).
DirectionCodebook build_rvq_codebook(RngStream stream, int nt, int bits);

struct DirectionSelection {
  int index = 0;
  double cos2_beta = 0.0;       // |h^* v|^2 / ||h||^2 for the chosen v
  double residual_phase = 0.0;  // angle(h^* v)
};

// argmax over the codebook of |h^* v|, ties to the lowest index.
// Throws for a zero channel vector or a length mismatch.
DirectionSelection select_direction(std::span<const std::complex<double>> h,
                                    const DirectionCodebook& cb);

// Residual-phase feedback with a B2-bit codebook; same construction and
// error bound as the SISO phase quantizer with B replaced by B2.
PhaseFeedback quantize_residual_phase(double residual_phase, int b2);

// Chosen indices plus the derived analysis quantities.
struct MisoFeedback {
  int direction_index = 0;
  int phase_index = 0;
  double cos2_beta = 0.0;
  double theta = 0.0;
};

// Full receiver-side pipeline: direction selection then residual-phase
// quantization against a prebuilt phase codebook.
MisoFeedback quantize_channel(std::span<const std::complex<double>> h,
                              const DirectionCodebook& directions,
                              const PhaseCodebook& phases);

// 2 - hbq(Pt ||h||^2 cos^2(beta) (1 -/+ sin 2theta)); reduces to the SISO
// feedback capacity when cos2_beta = 1. Requires cos2_beta in [0,1],
// |theta| <= pi/4.
double capacity_miso_fb(TransmitPower pt, double h_norm_sq, double cos2_beta,
                        double theta);

double capacity_miso_fb_lower(TransmitPower pt, double h_norm_sq,
                              double cos2_beta, double theta);

// Perfect-CSIT capacity 2 (1 - hbq(Pt ||h||^2)).
double capacity_miso_perfect(TransmitPower pt, double h_norm_sq);

// Lower bound (1 - 2^(-B1/(Nt-1))) (1 - 2^(-B2)) on the average effective
// power factor E[cos^2(beta) (1 - sin 2|theta|)], with its dB form.
struct PowerLossBound {
  double factor = 0.0;
  double db = 0.0;
};

PowerLossBound power_loss_bound(int nt, int b1, int b2);

// Feedback budget check: with delta solving hbq(delta) = eps and assuming
// E[||h||^2] = Nt, the average capacity loss stays below 2*eps when
// bound >= delta / (Pt * Nt).
struct FeedbackBudget {
  bool satisfied = false;
  double margin = 0.0;  // bound - required
  double bound = 0.0;
  double required = 0.0;
  double delta = 0.0;
};

FeedbackBudget feedback_budget_satisfied(int nt, int b1, int b2,
                                         TransmitPower pt, double epsilon);

}  // namespace onebit
