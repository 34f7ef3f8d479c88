// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Statistical criteria carry their slack explicitly; every tolerance is
// pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "fpqc/bounds.hpp"
#include "fpqc/channels.hpp"
#include "fpqc/experiments.hpp"
#include "fpqc/gaussian.hpp"
#include "fpqc/metrics.hpp"
#include "fpqc/rng.hpp"
#include "oracles.hpp"

using namespace fpqc;

namespace {

int failures = 0;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// 1. CAR algebra over all Majorana pairs, M = 1..4.
void criterion_car() {
  Timer timer;
  double worst = 0.0;
  for (int modes = 1; modes <= 4; ++modes) {
    const std::int64_t d = std::int64_t{1} << modes;
    for (int k = 1; k <= 2 * modes; ++k) {
      const DenseOperator ck = majorana_operator(k, modes).to_dense();
      for (int l = 1; l <= 2 * modes; ++l) {
        const DenseOperator cl = majorana_operator(l, modes).to_dense();
        DenseOperator expected = DenseOperator::Zero(d, d);
        if (k == l) expected = 2.0 * DenseOperator::Identity(d, d);
        worst = std::max(worst, oracle::max_abs(ck * cl + cl * ck - expected));
      }
    }
  }
  const double elapsed = timer.seconds();
  report(1, worst <= 1e-12 && elapsed < 10.0,
         fmt("CAR residual %.3e (limit 1e-12), %.1f s (limit 10 s)", worst,
             elapsed));
}

// 2. Exact randomization by the full monomial set, 20 states per M in {1,2,3}.
void criterion_full_randomizer() {
  Timer timer;
  double worst = 0.0;
  for (int modes = 1; modes <= 3; ++modes) {
    const RandomUnitaryChannel full = fpqc_full(modes);
    for (int rep = 0; rep < 20; ++rep) {
      const FermionicGaussianState state = random_gaussian_state(
          modes, rep % 2 ? StatePurity::Pure : StatePurity::Mixed,
          rng::derive_seed(2024, modes, rep));
      worst = std::max(worst,
                       distance_to_mms(apply(full, state.density()), 1.0));
    }
  }
  const double elapsed = timer.seconds();
  report(2, worst <= 1e-10 && elapsed < 30.0,
         fmt("full-set distance to MMS %.3e (limit 1e-10), %.1f s (limit 30 s)",
             worst, elapsed));
}

// 3. Covariance contraction by (M-2)/M against the brute-force oracle;
//    at M = 2 the output covariance vanishes and the Gaussian state rebuilt
//    from it is the MMS. The literal dense distance equals the magnitude of
//    the input's top monomial coefficient and is reported, not asserted.
void criterion_covariance_contraction() {
  double worst_scaling = 0.0;
  double worst_oracle_gap = 0.0;
  for (int modes = 1; modes <= 5; ++modes) {
    const RandomUnitaryChannel channel = fpqc_paper(modes);
    const double factor = static_cast<double>(modes - 2) / modes;
    for (int rep = 0; rep < 3; ++rep) {
      const FermionicGaussianState state = random_gaussian_state(
          modes, StatePurity::Mixed, rng::derive_seed(33, modes, rep));
      const DenseOperator out = apply(channel, state.density());
      worst_oracle_gap = std::max(
          worst_oracle_gap,
          oracle::max_abs(out - oracle::apply_channel(channel, state.density())));
      const RealMatrix before = oracle::covariance(state.density(), modes);
      const RealMatrix after = oracle::covariance(out, modes);
      worst_scaling = std::max(worst_scaling,
                               oracle::max_abs(after - factor * before));
    }
  }

  double worst_cov = 0.0;
  double worst_rebuilt = 0.0;
  double worst_dense = 0.0;
  const RandomUnitaryChannel two_mode = fpqc_paper(2);
  for (int rep = 0; rep < 10; ++rep) {
    const FermionicGaussianState state = random_gaussian_state(
        2, rep % 2 ? StatePurity::Pure : StatePurity::Mixed,
        rng::derive_seed(34, rep));
    const DenseOperator out = apply(two_mode, state.density());
    worst_cov = std::max(worst_cov, oracle::max_abs(covariance_of(out).matrix()));
    const NormalForm nf = normal_form(covariance_of(out));
    const FermionicGaussianState rebuilt =
        state_from_spectrum(nf.spectrum, RealMatrix::Identity(4, 4));
    worst_rebuilt = std::max(worst_rebuilt,
                             distance_to_mms(rebuilt.density(), 1.0));
    worst_dense = std::max(worst_dense, distance_to_mms(out, 1.0));
  }
  std::printf("       criterion 3 note: M=2 dense output distance reaches %.3f "
              "(= top-monomial coefficient; the degree-4 term is sign-flipped, "
              "not removed)\n", worst_dense);

  const bool ok = worst_scaling <= 1e-10 && worst_oracle_gap <= 1e-10 &&
                  worst_cov <= 1e-10 && worst_rebuilt <= 1e-10;
  report(3, ok,
         fmt("contraction error %.3e, M=2 output covariance %.3e, rebuilt-state "
             "distance %.3e (limits 1e-10)",
             worst_scaling, worst_cov, worst_rebuilt));
}

// 4. Canonical-form round trip on 100 random generators per M in {2,3,4}.
void criterion_normal_form() {
  double worst_residual = 0.0;
  bool spectra_ok = true;
  for (int modes : {2, 3, 4}) {
    for (int rep = 0; rep < 100; ++rep) {
      const SkewSymmetricMatrix gamma =
          SkewSymmetricMatrix::random(modes, rng::derive_seed(44, modes, rep));
      const NormalForm nf = normal_form(gamma);
      worst_residual = std::max(
          worst_residual, oracle::max_abs(nf.reconstruct() - gamma.matrix()));
      for (double mu : nf.spectrum) {
        const double lambda = state_spectrum_from_generator(mu);
        spectra_ok = spectra_ok && lambda >= 0.0 && lambda <= 1.0;
      }
    }
  }
  report(4, worst_residual <= 1e-10 && spectra_ok,
         fmt("round-trip residual %.3e (limit 1e-10), ", worst_residual) +
             "mapped spectra in [0,1]: " + (spectra_ok ? "yes" : "no"));
}

// 5. Pure-state distances and the Schatten norm ordering.
void criterion_metrics() {
  double worst = 0.0;
  for (int modes = 1; modes <= 3; ++modes) {
    const double d = static_cast<double>(std::int64_t{1} << modes);
    const DenseOperator rho =
        random_gaussian_state(modes, StatePurity::Pure, rng::derive_seed(55, modes))
            .density();
    worst = std::max(worst, std::abs(distance_to_mms(rho, 1.0) -
                                     2.0 * (d - 1.0) / d));
    worst = std::max(
        worst, std::abs(distance_to_mms(
                   rho, std::numeric_limits<double>::infinity()) -
                   (1.0 - 1.0 / d)));
  }

  bool ordering_ok = true;
  rng::Engine eng = rng::make_engine(56);
  for (int rep = 0; rep < 100; ++rep) {
    DenseOperator a(6, 6);
    for (std::int64_t i = 0; i < 6; ++i)
      for (std::int64_t j = 0; j < 6; ++j)
        a(i, j) = Complex(rng::standard_normal(eng), rng::standard_normal(eng));
    const double n_inf = schatten_norm(a, std::numeric_limits<double>::infinity());
    const double n_2 = schatten_norm(a, 2.0);
    const double n_1 = schatten_norm(a, 1.0);
    ordering_ok = ordering_ok && n_inf <= n_2 + 1e-10 && n_2 <= n_1 + 1e-10;
  }
  report(5, worst <= 1e-12 && ordering_ok,
         fmt("pure-state distance error %.3e (limit 1e-12), norm ordering held "
             "on 100 matrices: ", worst) + (ordering_ok ? "yes" : "no"));
}

// 6. Monotone randomization sweep at M = 3, single-threaded.
void criterion_sweep() {
  Timer timer;
  ExperimentConfig cfg;
  cfg.modes = 3;
  cfg.p = 1.0;
  cfg.epsilon = 0.1;
  cfg.num_states = 100;
  cfg.subset_sizes = {1, 4, 16, 64};
  cfg.trials = 50;
  cfg.seed = 20240601;
  cfg.workers = 1;
  const SweepResult result = sweep_cardinality(cfg);

  bool decreasing = true;
  std::string medians;
  for (std::size_t i = 0; i < result.per_size.size(); ++i) {
    const double median = result.per_size[i].median_trial_max;
    medians += fmt("%.4f ", median);
    if (i > 0)
      decreasing = decreasing &&
                   median <= 0.9 * result.per_size[i - 1].median_trial_max;
  }
  const double exhaustive = result.per_size.back().max_distance;
  const double elapsed = timer.seconds();
  const bool ok = decreasing && exhaustive <= 1e-10 && elapsed < 300.0;
  report(6, ok,
         "median trial-max per size { " + medians + "} strictly decreasing " +
             "with 10% slack: " + (decreasing ? "yes" : "no") +
             fmt(", exhaustive point %.3e (limit 1e-10), %.1f s (limit 300 s)",
                 exhaustive, elapsed));
}

// 7. Concentration tails and the exact bounded-difference audit.
void criterion_concentration() {
  ExperimentConfig cfg;
  cfg.modes = 3;
  cfg.subset_sizes = {16, 64};
  cfg.trials = 2000;  // channel draws
  cfg.seed = 777;
  cfg.workers = 0;  // free to parallelize; results are draw-indexed
  const std::vector<double> t_grid = {0.1, 0.2, 0.4};
  const ConcentrationResult result = concentration_experiment(cfg, t_grid);

  bool tails_ok = true;
  for (const ConcentrationPoint& pt : result.points) {
    const double sigma = std::sqrt(pt.analytic_bound *
                                   std::max(0.0, 1.0 - pt.analytic_bound) /
                                   static_cast<double>(cfg.trials));
    const bool ok = pt.empirical_frequency <= pt.analytic_bound + 3.0 * sigma;
    tails_ok = tails_ok && ok;
    std::printf("       |U|=%lld t=%.1f: freq %.4f vs bound %.4f + 3sigma %.4f\n",
                static_cast<long long>(pt.subset_size), pt.t,
                pt.empirical_frequency, pt.analytic_bound, 3.0 * sigma);
  }

  bool audit_ok = true;
  double worst_margin = 0.0;
  for (const ConcentrationAudit& audit : result.audits) {
    audit_ok = audit_ok && audit.bounded_difference_max <=
                               audit.bounded_difference_limit + 1e-12;
    worst_margin = std::max(worst_margin, audit.bounded_difference_max -
                                              audit.bounded_difference_limit);
  }
  report(7, tails_ok && audit_ok,
         std::string("empirical tails within bound + 3sigma over 2000 draws: ") +
             (tails_ok ? "yes" : "no") +
             fmt(", bounded-difference excess %.3e (limit 0 within 1e-12)",
                 worst_margin));
}

// 8. Closed-form bound calculators and the published Lemma-4 grid.
void criterion_bounds() {
  const double prop2 = bounds::prop2_threshold(0.1, 10, 1.0).threshold;
  const double prop2_ref = 9210.3403719761827;  // 2000 ln 100
  const double prop2_err = std::abs(prop2 - prop2_ref) / prop2_ref;

  const double net = bounds::net_log_cardinality(0.5, 2);
  const double net_ref = 18.420680743952365;  // 8 ln 10
  const double net_err = std::abs(net - net_ref);

  struct GridPoint {
    double epsilon;
    int modes;
    double cardinality;
  };
  const std::vector<GridPoint> grid = {
      {25.0, 10, 399.0},  {40.0, 20, 1599.0}, {30.0, 8, 250.0},
      {25.0, 10, 15.0},   {25.0, 10, 500.0},  {0.1, 2, 16.0},
  };
  bool negatives_ok = true;
  std::printf("       Lemma-4 grid (side condition 2M < |U| < (2M)^2):\n");
  for (const GridPoint& g : grid) {
    const bounds::FinalProbabilityBound fb =
        bounds::final_log_probability(g.epsilon, g.modes, g.cardinality);
    const bool side = 2.0 * g.modes < g.cardinality &&
                      g.cardinality < 4.0 * g.modes * g.modes;
    if (side) negatives_ok = negatives_ok && fb.log_probability < 0.0;
    std::printf("       eps=%-5.1f M=%-3d |U|=%-6.0f side=%s log_prob=%+.3f%s\n",
                g.epsilon, g.modes, g.cardinality, side ? "yes" : "no ",
                fb.log_probability,
                side ? "" : "  (side condition violated; reported, not asserted)");
  }

  const bool ok = prop2_err <= 1e-9 && net_err <= 1e-12 && negatives_ok;
  report(8, ok,
         fmt("prop2 rel err %.2e (limit 1e-9), net log err %.2e (limit 1e-12), ",
             prop2_err, net_err) +
             std::string("grid negatives: ") + (negatives_ok ? "yes" : "no"));
}

// 9. Bit-identical CSV across worker counts.
void criterion_determinism() {
  ExperimentConfig cfg;
  cfg.modes = 3;
  cfg.num_states = 10;
  cfg.subset_sizes = {1, 4};
  cfg.trials = 5;
  cfg.seed = 31337;

  std::string csv[2];
  int workers[2] = {1, 4};
  for (int i = 0; i < 2; ++i) {
    cfg.workers = workers[i];
    std::ostringstream out;
    export_csv(sweep_cardinality(cfg), out);
    csv[i] = out.str();
  }
  report(9, csv[0] == csv[1],
         std::string("CSV identical for 1 vs 4 workers: ") +
             (csv[0] == csv[1] ? "yes" : "no"));
}

}  // namespace

int main() {
  criterion_car();
  criterion_full_randomizer();
  criterion_covariance_contraction();
  criterion_normal_form();
  criterion_metrics();
  criterion_sweep();
  criterion_concentration();
  criterion_bounds();
  criterion_determinism();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
