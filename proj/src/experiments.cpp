#include "onebit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "onebit/channel.hpp"
#include "onebit/dmc.hpp"
#include "onebit/miso.hpp"
#include "onebit/siso.hpp"
#include "onebit/special_functions.hpp"

namespace onebit {

namespace {

constexpr double kPi = std::numbers::pi;

// stream layout: even ids carry channel draws, odd ids codebook draws, so a
// trial's randomness never depends on which schemes run alongside it
std::uint64_t channel_stream(int trial) { return 2ull * static_cast<std::uint64_t>(trial); }
std::uint64_t codebook_stream(int trial) { return 2ull * static_cast<std::uint64_t>(trial) + 1ull; }
constexpr std::uint64_t kFixedCodebookStream = ~0ull;

// Runs body(t) for t in [0, trials) on up to `threads` workers. Each call
// writes only to its own output slots, so scheduling cannot affect results.
void for_each_trial(int trials, int threads,
                    const std::function<void(int)>& body) {
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, trials);
  if (workers == 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  const int chunk = std::max(1, trials / (8 * workers));
  auto drain = [&] {
    for (;;) {
      const int begin = next.fetch_add(chunk);
      if (begin >= trials) return;
      const int end = std::min(trials, begin + chunk);
      for (int t = begin; t < end; ++t) body(t);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int i = 1; i < workers; ++i) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
}

struct Stats {
  double mean = 0.0;
  double std_error = 0.0;
};

// deterministic two-pass reduction in trial order
Stats reduce(std::span<const double> values) {
  const std::size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  Stats s;
  s.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.std_error = std::sqrt(ss / static_cast<double>(n - 1)) /
                  std::sqrt(static_cast<double>(n));
  }
  return s;
}

void check_common(const ExperimentConfig& cfg) {
  if (cfg.trials < 1)
    throw std::invalid_argument("experiment: trials must be >= 1");
  if (!(cfg.snr.step_db > 0.0))
    throw std::invalid_argument("experiment: SNR step must be > 0");
  if (cfg.snr.stop_db < cfg.snr.start_db - 1e-9)
    throw std::invalid_argument("experiment: SNR stop must be >= start");
}

std::vector<std::pair<int, int>> resolve_splits(const ExperimentConfig& cfg) {
  std::vector<std::pair<int, int>> splits = cfg.splits;
  if (cfg.sweep_splits) {
    if (cfg.total_bits < 2)
      throw std::invalid_argument("experiment: sweep-splits needs total bits >= 2");
    splits = enumerate_splits(cfg.total_bits);
  }
  if (splits.empty())
    throw std::invalid_argument("experiment: no (B1, B2) split requested");
  for (auto [b1, b2] : splits)
    if (b1 < 1 || b2 < 1)
      throw std::invalid_argument("experiment: split bits must be >= 1");
  return splits;
}

std::string split_label(const char* prefix, std::pair<int, int> split) {
  return std::string(prefix) + "-" + std::to_string(split.first) + "-" +
         std::to_string(split.second);
}

}  // namespace

std::vector<double> SnrGrid::points() const {
  std::vector<double> p;
  for (int i = 0;; ++i) {
    const double v = start_db + i * step_db;
    if (v > stop_db + 1e-9) break;
    p.push_back(v);
  }
  return p;
}

std::vector<std::pair<int, int>> enumerate_splits(int total) {
  std::vector<std::pair<int, int>> splits;
  for (int b1 = total - 1; b1 >= 1; --b1) splits.emplace_back(b1, total - b1);
  return splits;
}

std::vector<ResultRow> run_siso(const ExperimentConfig& cfg) {
  check_common(cfg);
  if (cfg.nt != 1)
    throw std::invalid_argument("run_siso: nt must be 1");
  if (cfg.siso_bits.empty())
    throw std::invalid_argument("run_siso: at least one feedback bit count required");

  const std::vector<double> snr = cfg.snr.points();
  std::vector<TransmitPower> powers;
  powers.reserve(snr.size());
  for (double db : snr) powers.push_back(TransmitPower::from_db(db));

  std::vector<PhaseCodebook> codebooks;
  for (int b : cfg.siso_bits) codebooks.push_back(build_phase_codebook(b));

  // scheme order: perfect, one per feedback codebook, no-CSIT
  const std::size_t n_fb = codebooks.size();
  const std::size_t n_schemes = n_fb + 2;
  const std::size_t n_snr = snr.size();
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);

  std::vector<double> caps(trials * n_schemes * n_snr);
  std::vector<double> abs_theta(trials * (n_fb + 1));  // fb schemes + no-CSIT

  for_each_trial(cfg.trials, cfg.threads, [&](int t) {
    const auto h = sample_channel({cfg.seed, channel_stream(t)}, 1);
    const double mag_sq = std::norm(h[0]);
    const double residue = mod_half_pi(std::arg(h[0]));

    std::vector<double> thetas(n_fb);
    for (std::size_t b = 0; b < n_fb; ++b) {
      thetas[b] = quantize_phase(residue, codebooks[b]).theta;
      abs_theta[t * (n_fb + 1) + b] = std::fabs(thetas[b]);
    }
    abs_theta[t * (n_fb + 1) + n_fb] = std::fabs(residue - kPi / 4.0);

    double* row = caps.data() + t * n_schemes * n_snr;
    for (std::size_t i = 0; i < n_snr; ++i) {
      row[i] = capacity_siso_perfect(powers[i], mag_sq);
      for (std::size_t b = 0; b < n_fb; ++b)
        row[(1 + b) * n_snr + i] = capacity_siso_fb(powers[i], mag_sq, thetas[b]);
      row[(1 + n_fb) * n_snr + i] = capacity_siso_no_csit(powers[i], h[0]);
    }
  });

  std::vector<std::string> labels;
  labels.emplace_back("perfect-csit");
  for (int b : cfg.siso_bits) labels.push_back("fb-" + std::to_string(b));
  labels.emplace_back("no-csit");

  std::vector<ResultRow> rows;
  rows.reserve(n_snr * n_schemes);
  std::vector<double> column(trials);
  for (std::size_t i = 0; i < n_snr; ++i) {
    for (std::size_t s = 0; s < n_schemes; ++s) {
      for (std::size_t t = 0; t < trials; ++t)
        column[t] = caps[(t * n_schemes + s) * n_snr + i];
      const Stats st = reduce(column);
      ResultRow row;
      row.snr_db = snr[i];
      row.scheme = labels[s];
      row.mean_capacity = st.mean;
      row.std_error = st.std_error;
      row.n_trials = cfg.trials;
      if (s >= 1) {  // feedback schemes and no-CSIT report their phase error
        for (std::size_t t = 0; t < trials; ++t)
          column[t] = abs_theta[t * (n_fb + 1) + (s - 1)];
        row.mean_abs_theta = reduce(column).mean;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

// shared by run_miso and run_loss: per (trial, split, snr) values are the
// feedback capacity or the loss against perfect CSIT
std::vector<ResultRow> run_miso_core(const ExperimentConfig& cfg, bool loss_mode) {
  check_common(cfg);
  if (cfg.nt < 2)
    throw std::invalid_argument("run_miso: nt must be >= 2");
  const auto splits = resolve_splits(cfg);

  const std::vector<double> snr = cfg.snr.points();
  std::vector<TransmitPower> powers;
  powers.reserve(snr.size());
  for (double db : snr) powers.push_back(TransmitPower::from_db(db));

  std::vector<PhaseCodebook> phase_cbs;
  for (auto [b1, b2] : splits) phase_cbs.push_back(build_phase_codebook(b2));

  std::vector<DirectionCodebook> fixed_cbs;
  if (cfg.fixed_codebook)
    for (auto [b1, b2] : splits)
      fixed_cbs.push_back(
          build_rvq_codebook({cfg.seed, kFixedCodebookStream}, cfg.nt, b1));

  const std::size_t n_splits = splits.size();
  const bool with_perfect = !loss_mode;
  const std::size_t n_schemes = n_splits + (with_perfect ? 1 : 0);
  const std::size_t n_snr = snr.size();
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);

  std::vector<double> values(trials * n_schemes * n_snr);
  std::vector<double> cos2(trials * n_splits);
  std::vector<double> abs_theta(trials * n_splits);

  for_each_trial(cfg.trials, cfg.threads, [&](int t) {
    const auto h = sample_channel({cfg.seed, channel_stream(t)}, cfg.nt);
    double h_norm_sq = 0.0;
    for (const auto& c : h) h_norm_sq += std::norm(c);

    double* row = values.data() + t * n_schemes * n_snr;
    std::size_t scheme = 0;
    if (with_perfect) {
      for (std::size_t i = 0; i < n_snr; ++i)
        row[i] = capacity_miso_perfect(powers[i], h_norm_sq);
      scheme = 1;
    }
    for (std::size_t s = 0; s < n_splits; ++s, ++scheme) {
      // per-realization codebook draws replay the same stream, so a smaller
      // B1 uses a prefix of a larger one's vectors (common random numbers)
      DirectionCodebook per_trial;
      if (!cfg.fixed_codebook)
        per_trial = build_rvq_codebook({cfg.seed, codebook_stream(t)}, cfg.nt,
                                       splits[s].first);
      const DirectionCodebook& use = cfg.fixed_codebook ? fixed_cbs[s] : per_trial;
      const MisoFeedback fb = quantize_channel(h, use, phase_cbs[s]);
      cos2[t * n_splits + s] = fb.cos2_beta;
      abs_theta[t * n_splits + s] = std::fabs(fb.theta);
      for (std::size_t i = 0; i < n_snr; ++i) {
        const double cap =
            capacity_miso_fb(powers[i], h_norm_sq, fb.cos2_beta, fb.theta);
        row[scheme * n_snr + i] =
            loss_mode ? capacity_miso_perfect(powers[i], h_norm_sq) - cap : cap;
      }
    }
  });

  std::vector<std::string> labels;
  if (with_perfect) labels.emplace_back("perfect-csit");
  for (auto split : splits)
    labels.push_back(split_label(loss_mode ? "loss" : "fb", split));

  std::vector<ResultRow> rows;
  rows.reserve(n_snr * n_schemes);
  std::vector<double> column(trials);
  for (std::size_t i = 0; i < n_snr; ++i) {
    for (std::size_t s = 0; s < n_schemes; ++s) {
      for (std::size_t t = 0; t < trials; ++t)
        column[t] = values[(t * n_schemes + s) * n_snr + i];
      const Stats st = reduce(column);
      ResultRow row;
      row.snr_db = snr[i];
      row.scheme = labels[s];
      row.mean_capacity = st.mean;
      row.std_error = st.std_error;
      row.n_trials = cfg.trials;
      if (!with_perfect || s >= 1) {
        const std::size_t split_idx = with_perfect ? s - 1 : s;
        for (std::size_t t = 0; t < trials; ++t)
          column[t] = cos2[t * n_splits + split_idx];
        row.mean_cos2_beta = reduce(column).mean;
        for (std::size_t t = 0; t < trials; ++t)
          column[t] = abs_theta[t * n_splits + split_idx];
        row.mean_abs_theta = reduce(column).mean;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_miso(const ExperimentConfig& cfg) {
  return run_miso_core(cfg, false);
}

std::vector<ResultRow> run_loss(const ExperimentConfig& cfg) {
  return run_miso_core(cfg, true);
}

OracleCheckReport run_oracle_check(const ExperimentConfig& cfg) {
  if (cfg.trials < 0)
    throw std::invalid_argument("oracle-check: trials must be >= 0");
  constexpr double kMiTol = 1e-9;
  constexpr double kBaTol = 1e-6;

  std::vector<std::pair<double, double>> tuples;
  const double fixed_a[] = {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  for (double a : fixed_a)
    for (int i = 0; i <= 8; ++i)
      tuples.emplace_back(a, -kPi / 4.0 + i * (kPi / 16.0));
  Rng rng({cfg.seed, 0});
  for (int t = 0; t < cfg.trials; ++t) {
    const double a = 50.0 * rng.next_unit();
    const double theta = (kPi / 4.0) * (2.0 * rng.next_unit() - 1.0);
    tuples.emplace_back(a, theta);
  }

  OracleCheckReport report;
  report.cases = static_cast<int>(tuples.size());
  report.passed = true;
  double worst_mi_a = 0.0, worst_mi_theta = 0.0;
  const TransmitPower unit_power = TransmitPower::from_linear(1.0);
  for (auto [a, theta] : tuples) {
    const DmcModel dmc = build_dmc(a, theta);
    const double mi = mutual_information(dmc, kUniformInput);
    const double closed = capacity_siso_fb(unit_power, a, theta);
    const double dev = std::fabs(closed - mi);
    if (dev > report.max_mi_deviation) {
      report.max_mi_deviation = dev;
      worst_mi_a = a;
      worst_mi_theta = theta;
    }
    const BlahutArimotoResult ba = blahut_arimoto(dmc, 1e-9);
    const double excess = ba.capacity - mi;
    report.max_ba_excess = std::max(report.max_ba_excess, excess);
    if (dev > kMiTol || excess > kBaTol || ba.capacity < mi - kBaTol)
      report.passed = false;
  }
  if (!report.passed) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "worst tuple a_sq=%.10g theta=%.10g |closed-MI|=%.3g BA excess=%.3g",
                  worst_mi_a, worst_mi_theta, report.max_mi_deviation,
                  report.max_ba_excess);
    report.failure_detail = buf;
  }
  return report;
}

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_csv(std::span<const ResultRow> rows, std::ostream& os) {
  os << "snr_db,scheme,mean_capacity_bits,std_err,mean_cos2beta,mean_abs_theta,n_trials\n";
  for (const auto& r : rows) {
    os << fmt_g(r.snr_db) << ',' << r.scheme << ',' << fmt_g(r.mean_capacity)
       << ',' << fmt_g(r.std_error) << ','
       << (r.mean_cos2_beta ? fmt_g(*r.mean_cos2_beta) : std::string{}) << ','
       << (r.mean_abs_theta ? fmt_g(*r.mean_abs_theta) : std::string{}) << ','
       << r.n_trials << '\n';
  }
}

std::string to_csv(std::span<const ResultRow> rows) {
  std::ostringstream oss;
  write_csv(rows, oss);
  return oss.str();
}

std::optional<double> snr_at_level(std::span<const double> snr_db,
                                   std::span<const double> values,
                                   double level) {
  if (snr_db.size() != values.size() || snr_db.empty())
    throw std::invalid_argument("snr_at_level: curve arrays must match and be non-empty");
  if (values.front() >= level) return snr_db.front();
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] >= level) {
      const double run = values[i] - values[i - 1];
      const double frac = run > 0.0 ? (level - values[i - 1]) / run : 1.0;
      return snr_db[i - 1] + frac * (snr_db[i] - snr_db[i - 1]);
    }
  }
  return std::nullopt;
}

}  // namespace onebit
