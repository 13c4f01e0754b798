#include "onebit/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onebit {

namespace {

// finalizer of splitmix64
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

}  // namespace

Rng::Rng(RngStream stream)
    : state_(mix64(stream.seed + kGamma) ^
             mix64(stream.stream_id + 0xbf58476d1ce4e5b9ull)) {}

std::uint64_t Rng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double Rng::next_unit() {
  // 53-bit mantissa, shifted into (0, 1] so log() never sees zero
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
}

double Rng::next_gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::complex<double> Rng::next_cgauss() {
  // |z|^2 ~ Exp(1), phase uniform: CN(0,1) with N(0,1/2) components
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double r = std::sqrt(-std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

TransmitPower TransmitPower::from_db(double snr_db) {
  if (!std::isfinite(snr_db))
    throw std::invalid_argument("TransmitPower: dB value must be finite");
  return {std::pow(10.0, snr_db / 10.0), snr_db};
}

TransmitPower TransmitPower::from_linear(double pt) {
  if (!std::isfinite(pt) || pt <= 0.0)
    throw std::invalid_argument("TransmitPower: linear power must be > 0");
  return {pt, 10.0 * std::log10(pt)};
}

TransmitPower snr_db_to_power(double snr_db) {
  return TransmitPower::from_db(snr_db);
}

std::vector<std::complex<double>> sample_channel(RngStream stream, int nt) {
  if (nt < 1) throw std::invalid_argument("sample_channel: nt must be >= 1");
  Rng rng(stream);
  std::vector<std::complex<double>> h(static_cast<std::size_t>(nt));
  for (auto& c : h) c = rng.next_cgauss();
  return h;
}

}  // namespace onebit
