#pragma once

#include <array>

// Independent verification channel: one-bit quantization of rotated QPSK
// induces a 4-input/4-output discrete memoryless channel. Building its
// transition matrix from first principles and computing mutual information
// (plus the Blahut-Arimoto capacity) cross-checks every closed-form
// capacity expression in siso.hpp / miso.hpp without sharing their algebra.

namespace onebit {

// Rows are QPSK inputs k in {0,1,2,3} (symbol angle k*pi/2 + pi/4 + theta),
// columns are quantizer outputs in the fixed order
//   0: 1+j, 1: 1-j, 2: -1+j, 3: -1-j.
// Every row sums to 1.
struct DmcModel {
  std::array<std::array<double, 4>, 4> transition{};
};

using InputDistribution = std::array<double, 4>;

inline constexpr InputDistribution kUniformInput{0.25, 0.25, 0.25, 0.25};

// a_sq is the effective received power (Pt|h|^2 for SISO, Pt||h||^2 cos^2
// beta for MISO), theta the phase quantization error, |theta| <= pi/4.
// Real and imaginary noise components are independent N(0, 1/2), so the
// per-dimension sign-flip probabilities are Q(sqrt(2) A |cos(angle)|) and
// Q(sqrt(2) A |sin(angle)|); row entries are products of the two
// independent per-dimension outcomes.
DmcModel build_dmc(double a_sq, double theta);

// I(X;R) in bits for the given input distribution; 0 log 0 = 0.
double mutual_information(const DmcModel& dmc, const InputDistribution& input);

struct BlahutArimotoResult {
  double capacity = 0.0;  // bits, the converged lower bound
  InputDistribution optimum{};
  int iterations = 0;
};

// Standard alternating maximization starting from the uniform input,
// terminating when the Arimoto upper/lower capacity gap drops below tol
// (bits). Throws std::runtime_error if max_iters is exhausted.
BlahutArimotoResult blahut_arimoto(const DmcModel& dmc, double tol,
                                   int max_iters = 100000);

}  // namespace onebit
