#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "onebit/channel.hpp"

// Limited feedback over the one-bit quantized SISO channel: the receiver
// feeds back a uniformly quantized version of the channel phase (reduced
// mod pi/2, since QPSK is invariant under 90-degree rotations) and the
// transmitter pre-rotates its QPSK constellation accordingly. Capacities
// are closed-form in the transmit power, the channel gain and the phase
// quantization error. All functions are pure.

namespace onebit {

// Uniform quantizer of a phase residue on [0, pi/2):
// centers[i] = i*pi/2^(B+1) + pi/2^(B+2).
struct PhaseCodebook {
  int bits = 0;
  std::vector<double> centers;

  // half-width of each quantization cell, pi/2^(B+2)
  double cell_half_width() const { return centers.empty() ? 0.0 : centers[0]; }
};

struct PhaseFeedback {
  int index = 0;
  double theta = 0.0;  // chosen center minus phase residue, |theta| <= pi/2^(B+2)
};

// Requires 1 <= bits <= 30.
PhaseCodebook build_phase_codebook(int bits);

// Reduces angle into [0, pi/2) with mod(x, m) = x - m*floor(x/m).
double mod_half_pi(double angle);

// Nearest codebook center to mod(angle, pi/2), plain absolute distance,
// ties at cell edges broken toward the lower index.
PhaseFeedback quantize_phase(double angle, const PhaseCodebook& cb);

// Capacity of rotated QPSK through the one-bit quantized channel when the
// transmitter rotates by a quantized phase with error theta:
//   2 - hbq(Pt|h|^2 (1 - sin 2theta)) - hbq(Pt|h|^2 (1 + sin 2theta)).
// Requires |theta| <= pi/4.
double capacity_siso_fb(TransmitPower pt, double h_mag_sq, double theta);

// Lower bound 2 (1 - hbq(Pt|h|^2 (1 - sin 2|theta|))); never exceeds
// capacity_siso_fb on the same inputs.
double capacity_siso_fb_lower(TransmitPower pt, double h_mag_sq, double theta);

// Perfect-CSIT capacity 2 (1 - hbq(Pt|h|^2)).
double capacity_siso_perfect(TransmitPower pt, double h_mag_sq);

// Baseline without any feedback: fixed (un-rotated) uniform QPSK, i.e. the
// phase error is the raw residue mod(angle(h), pi/2) - pi/4.
double capacity_siso_no_csit(TransmitPower pt, std::complex<double> h);

// Average and bounding values of the phase-quantization power-loss factor
// E[1 - sin 2|theta|] for a B-bit codebook and uniform phase.
struct PhasePowerLoss {
  double average = 0.0;     // exact: 1 - sin^2(w)/w with w = pi/2^(B+2)
  double linearized = 0.0;  // 1 - w
  double loose = 0.0;       // 1 - 2^-B
  double worst_case = 0.0;  // 1 - sin(pi/2^(B+1)), the per-realization floor
};

PhasePowerLoss avg_power_loss_phase(int bits);

// dB equivalent of a linear power-loss factor in (0, 1].
inline double power_loss_db(double factor) { return -10.0 * std::log10(factor); }

}  // namespace onebit
