#include "fpqc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "fpqc/bounds.hpp"
#include "fpqc/metrics.hpp"
#include "fpqc/rng.hpp"

namespace fpqc {

namespace {

// Stream tags for seed derivation; fixed forever for reproducibility.
constexpr std::uint64_t kTagStates = 0x53544154u;   // surrogate-net states
constexpr std::uint64_t kTagChannel = 0x4348414eu;  // sweep channel draws
constexpr std::uint64_t kTagDraw = 0x44524157u;     // concentration draws
constexpr std::uint64_t kTagAudit = 0x41554454u;    // bounded-difference audit

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FPQC_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(0..count-1) on a worker pool. Each index writes to its own output
// slot, so scheduling cannot influence the result.
void parallel_for(std::int64_t count, int workers,
                  const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  workers = std::min<std::int64_t>(std::max(workers, 1), count);
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q / 100.0;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

double pqc_threshold(double epsilon, double p, int modes) {
  const double d = static_cast<double>(std::int64_t{1} << modes);
  return std::isinf(p) ? epsilon / d : epsilon / std::pow(d, (p - 1.0) / p);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_rows(std::ostream& out,
                const std::vector<std::tuple<std::int64_t, std::string, double>>& rows) {
  out << "subset_size,statistic,value\n";
  for (const auto& [size, name, value] : rows)
    out << size << ',' << name << ',' << format_double(value) << '\n';
}

RandomUnitaryChannel draw_channel(const ExperimentConfig& config,
                                  std::int64_t subset_size, std::uint64_t seed) {
  const std::int64_t group = std::int64_t{1} << (2 * config.modes);
  if (subset_size == group) return fpqc_full(config.modes);  // exhaustive point
  return fpqc_random_subset(config.modes, subset_size, seed);
}

}  // namespace

std::string to_string(ChannelFamily family) {
  return family == ChannelFamily::Paper ? "paper" : "random_monomial";
}

ChannelFamily channel_family_from_string(const std::string& name) {
  if (name == "paper") return ChannelFamily::Paper;
  if (name == "random_monomial") return ChannelFamily::RandomMonomial;
  throw std::invalid_argument("unknown channel family '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (modes < 1 || modes > kExpansionModeBudget)
    throw std::invalid_argument("modes must lie in 1.." +
                                std::to_string(kExpansionModeBudget));
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument("norm order must satisfy p >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (num_states < 1) throw std::invalid_argument("num_states must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (subset_sizes.empty())
    throw std::invalid_argument("subset_sizes must be nonempty");
  const std::int64_t group = std::int64_t{1} << (2 * modes);
  for (std::int64_t n : subset_sizes)
    if (n < 1 || n > group)
      throw std::invalid_argument("subset sizes must lie in [1, 4^M]");
  if (workers < 0) throw std::invalid_argument("workers must be nonnegative");
}

std::vector<FermionicGaussianState> surrogate_net(int modes, int count,
                                                  std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("net size must be positive");
  std::vector<FermionicGaussianState> states;
  states.reserve(count);
  for (int i = 0; i < count; ++i)
    states.push_back(random_gaussian_state(
        modes, StatePurity::Pure,
        rng::derive_seed(seed, kTagStates, static_cast<std::uint64_t>(i))));
  return states;
}

SweepResult sweep_cardinality(const ExperimentConfig& config) {
  config.validate();
  const int workers = resolve_workers(config.workers);
  const std::vector<FermionicGaussianState> states =
      surrogate_net(config.modes, config.num_states, config.seed);
  // Materialize densities up front so workers only read.
  parallel_for(states.size(), workers,
               [&](std::int64_t i) { (void)states[i].density(); });

  const bool paper = config.channel_family == ChannelFamily::Paper;
  const std::vector<std::int64_t> sizes =
      paper ? std::vector<std::int64_t>{2 * config.modes} : config.subset_sizes;
  const int trials = paper ? 1 : config.trials;
  const std::int64_t per_size = static_cast<std::int64_t>(trials) * config.num_states;

  std::vector<double> distances(sizes.size() * per_size, 0.0);
  parallel_for(static_cast<std::int64_t>(sizes.size()) * trials, workers,
               [&](std::int64_t item) {
                 const std::int64_t si = item / trials;
                 const std::int64_t ti = item % trials;
                 const RandomUnitaryChannel channel =
                     paper ? fpqc_paper(config.modes)
                           : draw_channel(config, sizes[si],
                                          rng::derive_seed(config.seed, kTagChannel,
                                                           si, ti));
                 for (int k = 0; k < config.num_states; ++k) {
                   const DenseOperator out = apply(channel, states[k].density());
                   distances[si * per_size + ti * config.num_states + k] =
                       distance_to_mms(out, config.p);
                 }
               });

  const double threshold = pqc_threshold(config.epsilon, config.p, config.modes);
  SweepResult result;
  result.config = config;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const auto begin = distances.begin() + si * per_size;
    const std::vector<double> pool(begin, begin + per_size);

    SizeStatistics stats;
    stats.subset_size = sizes[si];
    stats.samples = per_size;
    double sum = 0.0;
    std::int64_t passes = 0;
    for (double dst : pool) {
      stats.max_distance = std::max(stats.max_distance, dst);
      sum += dst;
      if (dst <= threshold) ++passes;
    }
    stats.mean_distance = sum / static_cast<double>(per_size);
    stats.pass_fraction = static_cast<double>(passes) / static_cast<double>(per_size);

    std::vector<double> sorted = pool;
    std::sort(sorted.begin(), sorted.end());
    stats.q50 = quantile(sorted, 50.0);
    stats.q90 = quantile(sorted, 90.0);
    stats.q99 = quantile(sorted, 99.0);

    std::vector<double> trial_max(trials, 0.0);
    for (int ti = 0; ti < trials; ++ti)
      for (int k = 0; k < config.num_states; ++k)
        trial_max[ti] = std::max(trial_max[ti],
                                 pool[ti * config.num_states + k]);
    std::sort(trial_max.begin(), trial_max.end());
    stats.median_trial_max = quantile(trial_max, 50.0);

    result.per_size.push_back(stats);
    std::fprintf(stderr, "sweep: size %lld done (%lld samples)\n",
                 static_cast<long long>(sizes[si]),
                 static_cast<long long>(per_size));
  }
  return result;
}

ConcentrationResult concentration_experiment(const ExperimentConfig& config,
                                             const std::vector<double>& t_grid) {
  config.validate();
  if (t_grid.empty()) throw std::invalid_argument("t grid must be nonempty");
  for (double t : t_grid)
    if (!(t >= 0.0)) throw std::invalid_argument("t values must be nonnegative");
  const int workers = resolve_workers(config.workers);

  const FermionicGaussianState state =
      surrogate_net(config.modes, 1, config.seed).front();
  const DenseOperator& rho = state.density();
  const std::int64_t draws = config.trials;
  const std::int64_t group = std::int64_t{1} << (2 * config.modes);
  const std::uint64_t group_bound = static_cast<std::uint64_t>(group);

  const std::size_t size_count = config.subset_sizes.size();
  std::vector<double> ys(size_count * draws, 0.0);
  std::vector<double> deltas(size_count * draws, 0.0);

  parallel_for(static_cast<std::int64_t>(size_count) * draws, workers,
               [&](std::int64_t item) {
                 const std::int64_t si = item / draws;
                 const std::int64_t dr = item % draws;
                 const std::int64_t n = config.subset_sizes[si];
                 const RandomUnitaryChannel channel = fpqc_random_subset(
                     config.modes, n,
                     rng::derive_seed(config.seed, kTagDraw, si, dr));
                 const double y = distance_to_mms(apply(channel, rho), 1.0);
                 ys[item] = y;

                 // Resample one Kraus element and record |Y - Y'|.
                 rng::Engine audit = rng::make_engine(
                     rng::derive_seed(config.seed, kTagAudit, si, dr));
                 std::vector<KrausTerm> kraus = channel.kraus();
                 const std::size_t slot = static_cast<std::size_t>(
                     rng::bounded_uint(audit, static_cast<std::uint64_t>(n)));
                 kraus[slot].unitary = hermitian_monomial(
                     config.modes, rng::bounded_uint(audit, group_bound));
                 const RandomUnitaryChannel resampled(config.modes, std::move(kraus));
                 const double y2 = distance_to_mms(apply(resampled, rho), 1.0);
                 deltas[item] = std::abs(y - y2);
               });

  ConcentrationResult result;
  result.config = config;
  result.t_grid = t_grid;
  const double dim = static_cast<double>(std::int64_t{1} << config.modes);
  for (std::size_t si = 0; si < size_count; ++si) {
    const std::int64_t n = config.subset_sizes[si];
    ConcentrationAudit audit;
    audit.subset_size = n;
    audit.draws = draws;
    audit.centering =
        bounds::concentration_tail(0.0, config.modes, static_cast<double>(n))
            .centering;
    audit.centering_hilbert = dim / static_cast<double>(n) + 1.0 / dim;
    audit.bounded_difference_limit = 2.0 / static_cast<double>(n);
    double sum = 0.0;
    for (std::int64_t dr = 0; dr < draws; ++dr) {
      sum += ys[si * draws + dr];
      audit.bounded_difference_max =
          std::max(audit.bounded_difference_max, deltas[si * draws + dr]);
    }
    audit.mean_y = sum / static_cast<double>(draws);
    result.audits.push_back(audit);

    for (double t : t_grid) {
      ConcentrationPoint point;
      point.subset_size = n;
      point.t = t;
      point.analytic_bound =
          bounds::concentration_tail(t, config.modes, static_cast<double>(n)).tail;
      std::int64_t exceed = 0;
      for (std::int64_t dr = 0; dr < draws; ++dr)
        if (ys[si * draws + dr] >= t + audit.centering) ++exceed;
      point.empirical_frequency =
          static_cast<double>(exceed) / static_cast<double>(draws);
      result.points.push_back(point);
    }
    std::fprintf(stderr, "concentration: size %lld done (%lld draws)\n",
                 static_cast<long long>(n), static_cast<long long>(draws));
  }
  return result;
}

ExportFormat export_format_from_string(const std::string& name) {
  if (name == "csv") return ExportFormat::Csv;
  if (name == "json") return ExportFormat::Json;
  throw std::invalid_argument("unknown export format '" + name + "'");
}

void export_csv(const SweepResult& result, std::ostream& out) {
  std::vector<std::tuple<std::int64_t, std::string, double>> rows;
  for (const SizeStatistics& s : result.per_size) {
    rows.emplace_back(s.subset_size, "max_distance", s.max_distance);
    rows.emplace_back(s.subset_size, "mean_distance", s.mean_distance);
    rows.emplace_back(s.subset_size, "q50", s.q50);
    rows.emplace_back(s.subset_size, "q90", s.q90);
    rows.emplace_back(s.subset_size, "q99", s.q99);
    rows.emplace_back(s.subset_size, "pass_fraction", s.pass_fraction);
    rows.emplace_back(s.subset_size, "median_trial_max", s.median_trial_max);
  }
  write_rows(out, rows);
}

void export_csv(const ConcentrationResult& result, std::ostream& out) {
  std::vector<std::tuple<std::int64_t, std::string, double>> rows;
  for (const ConcentrationPoint& pt : result.points) {
    rows.emplace_back(pt.subset_size,
                      "empirical_frequency[t=" + format_label(pt.t) + "]",
                      pt.empirical_frequency);
    rows.emplace_back(pt.subset_size,
                      "analytic_bound[t=" + format_label(pt.t) + "]",
                      pt.analytic_bound);
  }
  for (const ConcentrationAudit& a : result.audits) {
    rows.emplace_back(a.subset_size, "mean_y", a.mean_y);
    rows.emplace_back(a.subset_size, "centering", a.centering);
    rows.emplace_back(a.subset_size, "centering_hilbert", a.centering_hilbert);
    rows.emplace_back(a.subset_size, "bounded_difference_max",
                      a.bounded_difference_max);
    rows.emplace_back(a.subset_size, "bounded_difference_limit",
                      a.bounded_difference_limit);
    rows.emplace_back(a.subset_size, "draws", static_cast<double>(a.draws));
  }
  write_rows(out, rows);
}

namespace {

nlohmann::json stats_to_json(const SizeStatistics& s) {
  return {{"subset_size", s.subset_size},
          {"samples", s.samples},
          {"max_distance", s.max_distance},
          {"mean_distance", s.mean_distance},
          {"q50", s.q50},
          {"q90", s.q90},
          {"q99", s.q99},
          {"pass_fraction", s.pass_fraction},
          {"median_trial_max", s.median_trial_max}};
}

}  // namespace

void export_json(const SweepResult& result, std::ostream& out) {
  nlohmann::json j;
  j["config"] = result.config;
  j["per_size"] = nlohmann::json::array();
  for (const SizeStatistics& s : result.per_size) j["per_size"].push_back(stats_to_json(s));
  out << j.dump(2) << '\n';
}

void export_json(const ConcentrationResult& result, std::ostream& out) {
  nlohmann::json j;
  j["config"] = result.config;
  j["t_grid"] = result.t_grid;
  j["points"] = nlohmann::json::array();
  for (const ConcentrationPoint& pt : result.points)
    j["points"].push_back({{"subset_size", pt.subset_size},
                           {"t", pt.t},
                           {"empirical_frequency", pt.empirical_frequency},
                           {"analytic_bound", pt.analytic_bound}});
  j["audits"] = nlohmann::json::array();
  for (const ConcentrationAudit& a : result.audits)
    j["audits"].push_back({{"subset_size", a.subset_size},
                           {"draws", a.draws},
                           {"mean_y", a.mean_y},
                           {"centering", a.centering},
                           {"centering_hilbert", a.centering_hilbert},
                           {"bounded_difference_max", a.bounded_difference_max},
                           {"bounded_difference_limit", a.bounded_difference_limit}});
  out << j.dump(2) << '\n';
}

namespace {

template <typename Result>
void export_to_path(const Result& result, const std::string& path,
                    ExportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  if (format == ExportFormat::Csv)
    export_csv(result, out);
  else
    export_json(result, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

void export_result(const SweepResult& result, const std::string& path,
                   ExportFormat format) {
  export_to_path(result, path, format);
}

void export_result(const ConcentrationResult& result, const std::string& path,
                   ExportFormat format) {
  export_to_path(result, path, format);
}

void to_json(nlohmann::json& j, const ExperimentConfig& config) {
  j = {{"modes", config.modes},
       {"p", config.p},
       {"epsilon", config.epsilon},
       {"num_states", config.num_states},
       {"subset_sizes", config.subset_sizes},
       {"trials", config.trials},
       {"seed", config.seed},
       {"channel_family", to_string(config.channel_family)}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& config) {
  config = ExperimentConfig{};
  if (j.contains("modes")) j.at("modes").get_to(config.modes);
  if (j.contains("p")) j.at("p").get_to(config.p);
  if (j.contains("epsilon")) j.at("epsilon").get_to(config.epsilon);
  if (j.contains("num_states")) j.at("num_states").get_to(config.num_states);
  if (j.contains("subset_sizes")) j.at("subset_sizes").get_to(config.subset_sizes);
  if (j.contains("trials")) j.at("trials").get_to(config.trials);
  if (j.contains("seed")) j.at("seed").get_to(config.seed);
  if (j.contains("channel_family"))
    config.channel_family =
        channel_family_from_string(j.at("channel_family").get<std::string>());
}

}  // namespace fpqc
