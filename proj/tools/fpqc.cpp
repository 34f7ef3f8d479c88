// Command-line front end: verification suite, cardinality sweeps,
// concentration experiments, bound evaluation, and state inspection.
//
// Exit codes: 0 success, 1 failed assertion or I/O error, 2 usage or config
// parse failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fpqc/bounds.hpp"
#include "fpqc/channels.hpp"
#include "fpqc/experiments.hpp"
#include "fpqc/gaussian.hpp"
#include "fpqc/metrics.hpp"
#include "fpqc/rng.hpp"
#include "fpqc/serialization.hpp"

namespace {

using namespace fpqc;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

struct Failure {
  std::string name;
  double measured;
  double limit;
};

void report_failures(const std::vector<Failure>& failures) {
  nlohmann::json j;
  j["failures"] = nlohmann::json::array();
  for (const Failure& f : failures)
    j["failures"].push_back(
        {{"name", f.name}, {"measured", f.measured}, {"limit", f.limit}});
  std::cerr << j.dump() << '\n';
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  for (double v : parse_double_list(csv)) out.push_back(static_cast<std::int64_t>(v));
  return out;
}

// Shared experiment flags; precedence is flags > config file > defaults.
struct ExperimentFlags {
  std::optional<int> modes;
  std::optional<double> p;
  std::optional<double> epsilon;
  std::optional<std::string> subset_sizes;
  std::optional<int> trials;
  std::optional<int> num_states;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> channel_family;
  std::optional<int> workers;
  std::string config_path;
  std::string out_path = "-";
  std::string format = "csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("--modes", modes, "Mode count M (Hilbert dimension 2^M)");
    cmd->add_option("--p", p, "Schatten norm order p >= 1 (dimensionless)");
    cmd->add_option("--epsilon", epsilon, "Target distance epsilon (trace-norm units)");
    cmd->add_option("--subset-sizes", subset_sizes,
                    "Comma list of Kraus-set cardinalities |U| in [1, 4^M]");
    cmd->add_option("--trials", trials, "Channel draws per subset size (count)");
    cmd->add_option("--num-states", num_states, "Surrogate-net size (count of pure states)");
    cmd->add_option("--seed", seed, "64-bit master seed");
    cmd->add_option("--channel-family", channel_family,
                    "Kraus family: paper | random_monomial");
    cmd->add_option("--workers", workers,
                    "Worker threads (0 = FPQC_WORKERS env, else hardware)");
    cmd->add_option("--config", config_path, "JSON config file with the same keys");
    cmd->add_option("--out", out_path, "Output path ('-' = stdout)");
    cmd->add_option("--format", format, "Output format: csv | json");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot open config '" + config_path + "'");
      nlohmann::json j;
      in >> j;
      cfg = j.get<ExperimentConfig>();
    }
    if (modes) cfg.modes = *modes;
    if (p) cfg.p = *p;
    if (epsilon) cfg.epsilon = *epsilon;
    if (subset_sizes) cfg.subset_sizes = parse_int_list(*subset_sizes);
    if (trials) cfg.trials = *trials;
    if (num_states) cfg.num_states = *num_states;
    if (seed) cfg.seed = *seed;
    if (channel_family) cfg.channel_family = channel_family_from_string(*channel_family);
    if (workers) cfg.workers = *workers;
    cfg.validate();
    return cfg;
  }
};

template <typename Result>
void write_result(const Result& result, const std::string& out_path,
                  const std::string& format) {
  const ExportFormat fmt = export_format_from_string(format);
  if (out_path == "-") {
    if (fmt == ExportFormat::Csv)
      export_csv(result, std::cout);
    else
      export_json(result, std::cout);
    return;
  }
  export_result(result, out_path, fmt);
}

int run_verify(int modes, std::uint64_t seed) {
  std::vector<Failure> failures;
  auto check = [&](const std::string& name, double measured, double limit) {
    const bool ok = measured <= limit;
    std::printf("%s %-28s measured %.3e  limit %.3e\n", ok ? "ok  " : "FAIL",
                name.c_str(), measured, limit);
    if (!ok) failures.push_back({name, measured, limit});
  };

  // CAR residual over all Majorana pairs.
  {
    double worst = 0.0;
    const int m = std::min(modes, 4);
    const std::int64_t d = std::int64_t{1} << m;
    for (int k = 1; k <= 2 * m; ++k)
      for (int l = 1; l <= 2 * m; ++l) {
        const DenseOperator ck = majorana_operator(k, m).to_dense();
        const DenseOperator cl = majorana_operator(l, m).to_dense();
        DenseOperator expected = DenseOperator::Zero(d, d);
        if (k == l) expected = 2.0 * DenseOperator::Identity(d, d);
        worst = std::max(worst, (ck * cl + cl * ck - expected).cwiseAbs().maxCoeff());
      }
    check("car_algebra", worst, 1e-12);
  }

  // Canonical-form round trip on random generators.
  {
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const SkewSymmetricMatrix gamma =
          SkewSymmetricMatrix::random(modes, rng::derive_seed(seed, 0x4e46u, rep));
      const NormalForm nf = normal_form(gamma);
      worst = std::max(worst,
                       (nf.reconstruct() - gamma.matrix()).cwiseAbs().maxCoeff());
    }
    check("normal_form_round_trip", worst, 1e-10);
  }

  // Exact randomization by the full monomial set.
  {
    const int m = std::min(modes, 3);
    double worst = 0.0;
    const RandomUnitaryChannel full = fpqc_full(m);
    for (int rep = 0; rep < 5; ++rep) {
      const FermionicGaussianState state = random_gaussian_state(
          m, StatePurity::Mixed, rng::derive_seed(seed, 0x4655u, rep));
      worst = std::max(worst, distance_to_mms(apply(full, state.density()), 1.0));
    }
    check("full_randomizer_exactness", worst, 1e-10);
  }

  // Covariance contraction of the 2M-unitary channel.
  {
    const int m = std::min(modes, 5);
    const double factor = static_cast<double>(m - 2) / m;
    const RandomUnitaryChannel channel = fpqc_paper(m);
    double worst = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      const FermionicGaussianState state = random_gaussian_state(
          m, StatePurity::Mixed, rng::derive_seed(seed, 0x4356u, rep));
      const RealMatrix before = covariance_of(state.density()).matrix();
      const RealMatrix after =
          covariance_of(apply(channel, state.density())).matrix();
      worst = std::max(worst, (after - factor * before).cwiseAbs().maxCoeff());
    }
    check("covariance_contraction", worst, 1e-10);
  }

  if (!failures.empty()) {
    report_failures(failures);
    return kExitAssertion;
  }
  return kExitOk;
}

int run_state_info(int modes, const std::string& lambda_csv,
                   const std::string& purity_name, std::uint64_t seed) {
  FermionicGaussianState state = [&] {
    if (!lambda_csv.empty()) {
      std::vector<double> lambda = parse_double_list(lambda_csv);
      const int m = static_cast<int>(lambda.size());
      return state_from_spectrum(std::move(lambda),
                                 RealMatrix::Identity(2 * m, 2 * m));
    }
    const StatePurity purity =
        purity_name == "pure" ? StatePurity::Pure : StatePurity::Mixed;
    return random_gaussian_state(modes, purity, seed);
  }();

  nlohmann::json j;
  j["modes"] = state.modes();
  j["lambda"] = state.spectrum();
  j["entropy_bits"] = entropy(state);
  j["purity"] = purity(state);
  j["is_pure"] = purity(state) >= 1.0 - 1e-10;
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermionic Gaussian private-channel simulator and verifier"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Run the fast invariant suite and exit 0 when everything holds");
  int verify_modes = 3;
  std::uint64_t verify_seed = 7;
  verify->add_option("--modes", verify_modes, "Mode count M (suite scales are capped internally)");
  verify->add_option("--seed", verify_seed, "64-bit seed for the random draws");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Distance-to-MMS statistics as a function of Kraus cardinality");
  ExperimentFlags sweep_flags;
  sweep_flags.attach(sweep);

  // concentration
  auto* conc = app.add_subcommand(
      "concentration", "Empirical channel-draw tails against the analytic bound");
  ExperimentFlags conc_flags;
  conc_flags.attach(conc);
  std::string t_grid_csv = "0.1,0.2,0.4";
  conc->add_option("--t-grid", t_grid_csv,
                   "Comma list of tail offsets t >= 0 (trace-norm units)");

  // bounds
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Evaluate every closed-form bound for one query, as JSON");
  bounds::BoundQuery query;
  bounds_cmd->add_option("--epsilon", query.epsilon, "Distance target epsilon (trace-norm units)");
  bounds_cmd->add_option("--modes", query.modes, "Mode count M");
  bounds_cmd->add_option("--p", query.p, "Schatten order p >= 1");
  bounds_cmd->add_option("--cardinality", query.cardinality, "Kraus-set cardinality |U|");
  bounds_cmd->add_option("--t", query.t, "Tail offset t >= 0");
  bounds_cmd->add_option("--c", query.c, "Absolute constant c > 0");
  bounds_cmd->add_option("--kappa", query.kappa, "Absolute constant kappa > 0");
  std::string bounds_out = "-";
  bounds_cmd->add_option("--out", bounds_out, "Output path ('-' = stdout)");

  // state-info
  auto* state_info = app.add_subcommand(
      "state-info", "Print spectrum, entropy and purity of a described state");
  int si_modes = 3;
  std::string si_lambda;
  std::string si_purity = "mixed";
  std::uint64_t si_seed = 0;
  state_info->add_option("--modes", si_modes, "Mode count M (used when sampling)");
  state_info->add_option("--lambda", si_lambda,
                         "Comma list of spectrum values in [0,1]; identity frame");
  state_info->add_option("--purity", si_purity, "pure | mixed (when sampling)");
  state_info->add_option("--seed", si_seed, "64-bit seed (when sampling)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(verify_modes, verify_seed);
    if (sweep->parsed()) {
      const SweepResult result = sweep_cardinality(sweep_flags.resolve());
      write_result(result, sweep_flags.out_path, sweep_flags.format);
      return kExitOk;
    }
    if (conc->parsed()) {
      const ConcentrationResult result = concentration_experiment(
          conc_flags.resolve(), parse_double_list(t_grid_csv));
      write_result(result, conc_flags.out_path, conc_flags.format);
      return kExitOk;
    }
    if (bounds_cmd->parsed()) {
      const nlohmann::json j = bounds::evaluate_bounds(query);
      if (bounds_out == "-") {
        std::cout << j.dump(2) << '\n';
      } else {
        std::ofstream out(bounds_out);
        if (!out) throw std::runtime_error("cannot open '" + bounds_out + "'");
        out << j.dump(2) << '\n';
      }
      return kExitOk;
    }
    if (state_info->parsed())
      return run_state_info(si_modes, si_lambda, si_purity, si_seed);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
  return kExitUsage;
}
