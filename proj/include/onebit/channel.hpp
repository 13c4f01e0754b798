#pragma once

#include <complex>
#include <cstdint>
#include <vector>

// Seeded generation of Rayleigh-fading channel realizations and transmit
// power bookkeeping. Randomness is counter-based: a (seed, stream_id) pair
// fully determines a sample sequence, so Monte Carlo trials can be assigned
// one stream each and evaluated in any order or in parallel with identical
// results.

namespace onebit {

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// splitmix64 stream with the state seeded from a hash of (seed, stream_id).
// A single Rng instance must not be shared across concurrent consumers;
// distinct streams are independent.
class Rng {
 public:
  explicit Rng(RngStream stream);

  std::uint64_t next_u64();
  // uniform on (0, 1]
  double next_unit();
  // standard normal, Box-Muller with a cached spare
  double next_gaussian();
  // circularly symmetric complex Gaussian CN(0,1)
  std::complex<double> next_cgauss();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct TransmitPower {
  double linear = 1.0;  // Pt
  double db = 0.0;      // 10 log10(Pt)

  static TransmitPower from_db(double snr_db);
  static TransmitPower from_linear(double pt);
};

// SNR (dB) = 10 log10(Pt): noise variance is fixed at 1, all SNR variation
// enters through the transmit power.
TransmitPower snr_db_to_power(double snr_db);

// nt iid CN(0,1) entries, deterministic given the stream. nt >= 1.
std::vector<std::complex<double>> sample_channel(RngStream stream, int nt);

}  // namespace onebit
