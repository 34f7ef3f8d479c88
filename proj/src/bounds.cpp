#include "fpqc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fpqc::bounds {

namespace {

void check_modes(int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be positive");
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
}

void check_tail_offset(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("tail offset t must be nonnegative");
}

void check_cardinality(double cardinality) {
  if (!(cardinality >= 1.0))
    throw std::invalid_argument("cardinality must be at least 1");
}

}  // namespace

double net_log_cardinality(double epsilon, int modes) {
  check_epsilon(epsilon);
  check_modes(modes);
  return 4.0 * modes * std::log(5.0 / epsilon);
}

double proof_net_log_cardinality(double epsilon, int modes) {
  check_epsilon(epsilon);
  check_modes(modes);
  return 4.0 * modes * std::log(20.0 * modes / epsilon);
}

double mcdiarmid_log_tail(double t, const std::vector<double>& bounded_differences) {
  check_tail_offset(t);
  if (bounded_differences.empty())
    throw std::invalid_argument("at least one bounded difference is required");
  double sum_sq = 0.0;
  for (double c : bounded_differences) {
    if (!(c > 0.0))
      throw std::invalid_argument("bounded differences must be positive");
    sum_sq += c * c;
  }
  return std::log(2.0) - 2.0 * t * t / sum_sq;
}

double mcdiarmid_tail(double t, const std::vector<double>& bounded_differences) {
  const double value = std::exp(mcdiarmid_log_tail(t, bounded_differences));
  return std::clamp(value, 0.0, 2.0);
}

ConcentrationBound concentration_tail(double t, int modes, double cardinality) {
  check_tail_offset(t);
  check_modes(modes);
  check_cardinality(cardinality);
  const double log_tail = -cardinality * t * t / 2.0;
  const double centering = 2.0 * modes / cardinality + 1.0 / (2.0 * modes);
  return ConcentrationBound{std::exp(log_tail), log_tail, centering};
}

FinalProbabilityBound final_log_probability(double epsilon, int modes,
                                            double cardinality) {
  check_epsilon(epsilon);
  check_modes(modes);
  check_cardinality(cardinality);
  const double two_m = 2.0 * modes;
  const double inner = epsilon / (4.0 * modes) -
                       std::pow(two_m, 1.0 / two_m) / cardinality - 1.0 / two_m;
  const double log_probability = std::log(2.0) +
                                 proof_net_log_cardinality(epsilon, modes) -
                                 cardinality * inner * inner;
  return FinalProbabilityBound{log_probability, inner, log_probability < 0.0};
}

CardinalityThreshold prop2_threshold(double epsilon, int modes, double c) {
  check_epsilon(epsilon);
  check_modes(modes);
  if (!(c > 0.0)) throw std::invalid_argument("constant c must be positive");
  const double kappa = std::log(10.0 / epsilon) / (c * epsilon * epsilon);
  // At epsilon >= 10 the log factor is nonpositive and the threshold carries
  // no information; it is flagged rather than clamped.
  return CardinalityThreshold{2.0 * modes * kappa, kappa, epsilon < 10.0};
}

double prop1_threshold(double epsilon, int modes, double p, double kappa) {
  check_epsilon(epsilon);
  check_modes(modes);
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument("norm order must satisfy p >= 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  const double exponent = std::isinf(p) ? 1.0 : (p - 1.0) / p;
  const double dimension_factor = std::pow(2.0 * modes, exponent);
  return 2.0 * kappa * modes * std::log(10.0 * dimension_factor / epsilon);
}

nlohmann::json evaluate_bounds(const BoundQuery& q) {
  nlohmann::json out;
  out["query"] = {{"epsilon", q.epsilon}, {"modes", q.modes},
                  {"p", std::isinf(q.p) ? -1.0 : q.p},
                  {"cardinality", q.cardinality}, {"t", q.t},
                  {"c", q.c},         {"kappa", q.kappa}};
  out["net_log_cardinality"] = net_log_cardinality(q.epsilon, q.modes);
  out["proof_net_log_cardinality"] = proof_net_log_cardinality(q.epsilon, q.modes);

  const std::vector<double> uniform_differences(
      static_cast<std::size_t>(std::max(1.0, q.cardinality)),
      2.0 / std::max(1.0, q.cardinality));
  const double mcd = mcdiarmid_tail(q.t, uniform_differences);
  out["mcdiarmid"] = {{"tail", mcd},
                      {"log_tail", mcdiarmid_log_tail(q.t, uniform_differences)},
                      {"trivial", mcd > 1.0},
                      {"bounded_difference", 2.0 / std::max(1.0, q.cardinality)}};

  const ConcentrationBound conc = concentration_tail(q.t, q.modes, q.cardinality);
  out["concentration"] = {{"tail", conc.tail},
                          {"log_tail", conc.log_tail},
                          {"centering", conc.centering}};

  const FinalProbabilityBound fin =
      final_log_probability(q.epsilon, q.modes, q.cardinality);
  out["final_probability"] = {{"log_probability", fin.log_probability},
                              {"inner", fin.inner},
                              {"bounded_below_one", fin.bounded_below_one}};

  const CardinalityThreshold p2 = prop2_threshold(q.epsilon, q.modes, q.c);
  out["prop2_threshold"] = {{"threshold", p2.threshold},
                            {"kappa", p2.kappa},
                            {"valid", p2.valid}};
  out["prop1_threshold"] = prop1_threshold(q.epsilon, q.modes, q.p, q.kappa);
  return out;
}

}  // namespace fpqc::bounds
