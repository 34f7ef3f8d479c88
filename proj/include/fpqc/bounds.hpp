#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fpqc::bounds {

// Closed-form bound evaluators. Everything is computed in log space (natural
// logarithms); quantities like (20M/eps)^{4M} are never exponentiated
// directly. This module reproduces the source arithmetic verbatim, including
// its literal 2M dimension factors; the simulation side uses 2^M where a
// density operator forces it.

// ln of the net-cardinality bound (5/eps)^{4M}.
double net_log_cardinality(double epsilon, int modes);

// ln of the sharper in-proof bound (20M/eps)^{4M}.
double proof_net_log_cardinality(double epsilon, int modes);

// Two-sided tail 2 exp(-2 t^2 / sum c_k^2); values above 1 are returned
// as-is (a trivial bound is still the formula's value).
double mcdiarmid_tail(double t, const std::vector<double>& bounded_differences);
double mcdiarmid_log_tail(double t, const std::vector<double>& bounded_differences);

struct ConcentrationBound {
  double tail;       // exp(-|U| t^2 / 2)
  double log_tail;
  double centering;  // 2M/|U| + 1/(2M), the shift applied to the threshold
};

ConcentrationBound concentration_tail(double t, int modes, double cardinality);

struct FinalProbabilityBound {
  double log_probability;  // ln 2 + 4M ln(20M/eps) - |U| * inner^2
  double inner;            // eps/(4M) - (2M)^{1/(2M)}/|U| - 1/(2M), as written
  bool bounded_below_one;  // log_probability < 0
};

FinalProbabilityBound final_log_probability(double epsilon, int modes,
                                            double cardinality);

struct CardinalityThreshold {
  double threshold;  // 2M * kappa
  double kappa;      // (1/(c eps^2)) ln(10/eps)
  bool valid;        // false when eps >= 10 (log factor nonpositive)
};

CardinalityThreshold prop2_threshold(double epsilon, int modes, double c);

// 2 kappa M ln(10 (2M)^{(p-1)/p} / eps); the dimension factor drops exactly
// at p = 1 and has exponent 1 in the p -> infinity limit.
double prop1_threshold(double epsilon, int modes, double p, double kappa);

// All evaluator inputs in one record, mirrored by the CLI `bounds` subcommand.
struct BoundQuery {
  double epsilon = 0.1;
  int modes = 3;
  double p = 1.0;
  double cardinality = 16.0;
  double t = 0.1;
  double c = 1.0;
  double kappa = 1.0;
};

nlohmann::json evaluate_bounds(const BoundQuery& query);

}  // namespace fpqc::bounds
