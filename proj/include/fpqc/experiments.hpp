#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fpqc/channels.hpp"
#include "fpqc/gaussian.hpp"

namespace fpqc {

enum class ChannelFamily { Paper, RandomMonomial };

std::string to_string(ChannelFamily family);
ChannelFamily channel_family_from_string(const std::string& name);

struct ExperimentConfig {
  int modes = 3;
  double p = 1.0;
  double epsilon = 0.1;
  int num_states = 100;                       // surrogate-net size
  std::vector<std::int64_t> subset_sizes = {1, 4, 16, 64};
  int trials = 50;                            // per subset size (or draws)
  std::uint64_t seed = 0;
  ChannelFamily channel_family = ChannelFamily::RandomMonomial;
  int workers = 0;  // 0 = FPQC_WORKERS env var, else hardware concurrency

  void validate() const;
};

// i.i.d. pure Gaussian states standing in for an epsilon-net over pure
// states; the worst case over this sample is a lower bound on the true
// supremum. Deterministic given the seed.
std::vector<FermionicGaussianState> surrogate_net(int modes, int count,
                                                  std::uint64_t seed);

struct SizeStatistics {
  std::int64_t subset_size = 0;
  std::int64_t samples = 0;     // trials * states pooled
  double max_distance = 0.0;
  double mean_distance = 0.0;
  double q50 = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
  double pass_fraction = 0.0;       // distances within the epsilon threshold
  double median_trial_max = 0.0;    // median over trials of the per-trial max
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SizeStatistics> per_size;
};

// For every subset size and trial, draws a random-monomial channel (the full
// 4^M set is substituted exactly when the size equals 4^M), applies it to
// every surrogate state and aggregates distance-to-MMS statistics at the
// configured p. The paper family ignores subset sizes and runs the fixed
// 2M-unitary channel once. Bit-identical results for a given config
// regardless of worker count.
SweepResult sweep_cardinality(const ExperimentConfig& config);

struct ConcentrationPoint {
  std::int64_t subset_size = 0;
  double t = 0.0;
  double empirical_frequency = 0.0;  // Pr[Y >= t + centering] over draws
  double analytic_bound = 0.0;       // exp(-|U| t^2 / 2)
};

struct ConcentrationAudit {
  std::int64_t subset_size = 0;
  std::int64_t draws = 0;
  double mean_y = 0.0;
  double centering = 0.0;          // 2M/|U| + 1/(2M)
  double centering_hilbert = 0.0;  // 2^M/|U| + 1/2^M variant, reported alongside
  double bounded_difference_max = 0.0;  // max |Y - Y'| over single-Kraus resamples
  double bounded_difference_limit = 0.0;  // 2/|U|
};

struct ConcentrationResult {
  ExperimentConfig config;
  std::vector<double> t_grid;
  std::vector<ConcentrationPoint> points;
  std::vector<ConcentrationAudit> audits;
};

// Estimates the channel-draw tail of Y = ||channel(state) - I/2^M||_1 for a
// fixed pure state (the first surrogate-net state), one estimate per subset
// size and t. Every draw is also audited: one Kraus element is resampled and
// |Y - Y'| must stay within 2/|U|.
ConcentrationResult concentration_experiment(const ExperimentConfig& config,
                                             const std::vector<double>& t_grid);

enum class ExportFormat { Csv, Json };

ExportFormat export_format_from_string(const std::string& name);

// CSV rows are (subset_size, statistic, value) with doubles printed to 17
// significant digits so a re-read reproduces them bit-exactly.
void export_csv(const SweepResult& result, std::ostream& out);
void export_csv(const ConcentrationResult& result, std::ostream& out);
void export_json(const SweepResult& result, std::ostream& out);
void export_json(const ConcentrationResult& result, std::ostream& out);

void export_result(const SweepResult& result, const std::string& path,
                   ExportFormat format);
void export_result(const ConcentrationResult& result, const std::string& path,
                   ExportFormat format);

void to_json(nlohmann::json& j, const ExperimentConfig& config);
void from_json(const nlohmann::json& j, ExperimentConfig& config);

}  // namespace fpqc
