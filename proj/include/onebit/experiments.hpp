#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Monte Carlo experiment runner behind the CLI: capacity-vs-SNR sweeps for
// the SISO and MISO feedback schemes, capacity-loss sweeps, and the DMC
// oracle cross-check. All schemes at a given trial index consume the same
// channel draw (common random numbers), trials are parallelized over
// per-trial RNG streams, and aggregation is a deterministic reduction in
// trial order, so output bytes depend only on (config, seed).

namespace onebit {

enum class Mode { siso, miso, loss, oracle_check };

struct SnrGrid {
  double start_db = -10.0;
  double step_db = 1.0;
  double stop_db = 30.0;

  std::vector<double> points() const;
};

struct ExperimentConfig {
  Mode mode = Mode::siso;
  int nt = 1;
  // SISO: one feedback scheme per entry (codebook bits)
  std::vector<int> siso_bits = {1, 2};
  // MISO/loss: (B1, B2) splits, or all splits of total_bits when sweep_splits
  std::vector<std::pair<int, int>> splits;
  bool sweep_splits = false;
  int total_bits = 0;
  SnrGrid snr;
  int trials = 1000;
  std::uint64_t seed = 1;
  bool fixed_codebook = false;  // one RVQ codebook per experiment instead of per trial
  int threads = 0;              // 0 = hardware concurrency
};

struct ResultRow {
  double snr_db = 0.0;
  std::string scheme;
  double mean_capacity = 0.0;  // in loss mode: mean capacity loss
  double std_error = 0.0;
  std::optional<double> mean_cos2_beta;
  std::optional<double> mean_abs_theta;
  int n_trials = 0;
};

std::vector<ResultRow> run_siso(const ExperimentConfig& cfg);
std::vector<ResultRow> run_miso(const ExperimentConfig& cfg);
std::vector<ResultRow> run_loss(const ExperimentConfig& cfg);

struct OracleCheckReport {
  bool passed = false;
  int cases = 0;
  double max_mi_deviation = 0.0;  // |closed form - uniform-input MI|
  double max_ba_excess = 0.0;     // Blahut-Arimoto capacity - uniform-input MI
  std::string failure_detail;     // worst offending tuple when failed
};

// Sweeps a fixed (a_sq, theta) grid plus cfg.trials random tuples; asserts
// the closed form against uniform-input mutual information within 1e-9 and
// against the Blahut-Arimoto capacity within 1e-6.
OracleCheckReport run_oracle_check(const ExperimentConfig& cfg);

// CSV with header
//   snr_db,scheme,mean_capacity_bits,std_err,mean_cos2beta,mean_abs_theta,n_trials
// numbers formatted %.10g, optional fields empty, LF line endings.
void write_csv(std::span<const ResultRow> rows, std::ostream& os);
std::string to_csv(std::span<const ResultRow> rows);

// SNR (dB) at which a non-decreasing capacity curve crosses the given level,
// linearly interpolated between adjacent grid points; nullopt if it never
// does. Used to read horizontal (dB) gaps between curves.
std::optional<double> snr_at_level(std::span<const double> snr_db,
                                   std::span<const double> values,
                                   double level);

// All (b1, b2) with b1 + b2 = total and b1, b2 >= 1.
std::vector<std::pair<int, int>> enumerate_splits(int total);

}  // namespace onebit
