#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpqc/bounds.hpp"

using namespace fpqc::bounds;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("net cardinality logs") {
  CHECK(net_log_cardinality(5.0, 3) == doctest::Approx(0.0).epsilon(1e-15));
  // 8 ln 10, high-precision reference value.
  CHECK(net_log_cardinality(0.5, 2) ==
        doctest::Approx(18.420680743952365).epsilon(1e-13));
  CHECK(net_log_cardinality(6.0, 1) < 0.0);  // base below one

  // Monotone: decreasing in epsilon, increasing in modes.
  double prev = net_log_cardinality(0.05, 4);
  for (double eps : {0.1, 0.2, 0.5, 1.0, 2.0}) {
    const double cur = net_log_cardinality(eps, 4);
    CHECK(cur < prev);
    prev = cur;
  }
  for (int m = 1; m < 6; ++m)
    CHECK(net_log_cardinality(0.3, m) < net_log_cardinality(0.3, m + 1));

  CHECK_THROWS_AS(net_log_cardinality(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(net_log_cardinality(-1.0, 2), std::invalid_argument);
}

TEST_CASE("in-proof net cardinality dominates the lemma form") {
  CHECK(proof_net_log_cardinality(20.0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(proof_net_log_cardinality(0.1, 2) ==
        doctest::Approx(47.931716376863856).epsilon(1e-13));
  // 20M >= 5 for every M >= 1, so the proof net is never smaller.
  for (int m = 1; m <= 10; ++m)
    for (double eps : {0.05, 0.1, 0.5, 1.0, 4.0})
      CHECK(proof_net_log_cardinality(eps, m) >= net_log_cardinality(eps, m));
}

TEST_CASE("McDiarmid tail") {
  const std::vector<double> c16(16, 2.0 / 16.0);
  CHECK(mcdiarmid_tail(0.0, c16) == 2.0);
  // Uniform differences c_k = 2/m collapse to 2 exp(-t^2 m / 2).
  CHECK(mcdiarmid_tail(0.3, c16) ==
        doctest::Approx(0.9735045119199433).epsilon(1e-13));

  double prev = mcdiarmid_tail(0.0, c16);
  for (double t : {0.1, 0.2, 0.4, 0.8}) {
    const double cur = mcdiarmid_tail(t, c16);
    CHECK(cur < prev);
    prev = cur;
  }

  CHECK_THROWS_AS(mcdiarmid_tail(-0.1, c16), std::invalid_argument);
  CHECK_THROWS_AS(mcdiarmid_tail(0.1, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(mcdiarmid_tail(0.1, std::vector<double>{0.0}), std::invalid_argument);
}

TEST_CASE("concentration tail and centering") {
  CHECK(concentration_tail(0.0, 3, 16).tail == 1.0);
  CHECK(concentration_tail(0.0, 4, 64).centering == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(concentration_tail(0.3, 3, 16).tail ==
        doctest::Approx(0.48675225595997165).epsilon(1e-13));

  // log-bound linear in the cardinality at fixed t.
  const double t = 0.2;
  const double l1 = concentration_tail(t, 3, 10).log_tail;
  const double l2 = concentration_tail(t, 3, 20).log_tail;
  const double l3 = concentration_tail(t, 3, 30).log_tail;
  CHECK(l2 - l1 == doctest::Approx(l3 - l2).epsilon(1e-12));

  // Exact relation to McDiarmid with uniform differences 2/m.
  for (double m : {8.0, 16.0, 64.0})
    for (double tv : {0.05, 0.1, 0.3, 0.7}) {
      const std::vector<double> cs(static_cast<std::size_t>(m), 2.0 / m);
      CHECK(mcdiarmid_tail(tv, cs) ==
            doctest::Approx(2.0 * concentration_tail(tv, 3, m).tail).epsilon(1e-13));
    }
}

TEST_CASE("final probability bound") {
  // Reference value from a 40-digit evaluation.
  const FinalProbabilityBound ref = final_log_probability(0.1, 2, 16);
  CHECK(ref.log_probability == doctest::Approx(46.925612115296581).epsilon(1e-13));
  CHECK(ref.inner == doctest::Approx(-0.32588834764831844).epsilon(1e-13));
  CHECK_FALSE(ref.bounded_below_one);

  // Vanishing inner expression leaves ln 2 plus the net term.
  // At M = 1: inner = eps/4 - sqrt(2)/|U| - 1/2 = 0 for |U| = 2 sqrt(2), eps = 4.
  const double u = 2.0 * std::sqrt(2.0);
  const FinalProbabilityBound flat = final_log_probability(4.0, 1, u);
  CHECK(std::abs(flat.inner) <= 1e-15);
  CHECK(flat.log_probability ==
        doctest::Approx(std::log(2.0) + 4.0 * std::log(20.0 / 4.0)).epsilon(1e-13));

  // Strictly decreasing in |U| while the inner expression stays positive.
  double prev = final_log_probability(25.0, 10, 300).log_probability;
  for (double card : {350.0, 399.0, 450.0, 500.0}) {
    const FinalProbabilityBound fb = final_log_probability(25.0, 10, card);
    CHECK(fb.inner > 0.0);
    CHECK(fb.log_probability < prev);
    prev = fb.log_probability;
  }

  // Published grid points satisfying 2M < |U| < (2M)^2 with a negative bound.
  CHECK(final_log_probability(25.0, 10, 399).bounded_below_one);
  CHECK(final_log_probability(25.0, 10, 399).log_probability ==
        doctest::Approx(-46.716124).epsilon(1e-6));
  CHECK(final_log_probability(40.0, 20, 1599).bounded_below_one);
  CHECK(final_log_probability(30.0, 8, 250).bounded_below_one);

  CHECK_THROWS_AS(final_log_probability(0.0, 2, 16), std::invalid_argument);
  CHECK_THROWS_AS(final_log_probability(0.1, 2, 0.5), std::invalid_argument);
}

TEST_CASE("cardinality thresholds") {
  const CardinalityThreshold big = prop2_threshold(0.1, 10, 1.0);
  CHECK(big.threshold == doctest::Approx(9210.3403719761827).epsilon(1e-12));
  CHECK(big.kappa == doctest::Approx(460.51701859880914).epsilon(1e-12));
  CHECK(big.valid);

  // Threshold vanishes as epsilon approaches 10 from below; flagged above.
  CHECK(prop2_threshold(9.999999, 3, 1.0).threshold ==
        doctest::Approx(0.0).epsilon(1e-4));
  CHECK_FALSE(prop2_threshold(10.0, 3, 1.0).valid);
  CHECK_FALSE(prop2_threshold(12.0, 3, 1.0).valid);

  // Linear in M.
  const double t1 = prop2_threshold(0.5, 1, 2.0).threshold;
  for (int m = 2; m <= 6; ++m)
    CHECK(prop2_threshold(0.5, m, 2.0).threshold ==
          doctest::Approx(m * t1).epsilon(1e-12));

  CHECK_THROWS_AS(prop2_threshold(0.1, 2, 0.0), std::invalid_argument);
}

TEST_CASE("prop1 threshold across norm orders") {
  // p = 1 drops the dimension factor exactly.
  CHECK(prop1_threshold(0.3, 4, 1.0, 2.0) ==
        doctest::Approx(2.0 * 2.0 * 4.0 * std::log(10.0 / 0.3)).epsilon(1e-13));
  CHECK(prop1_threshold(10.0, 1, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));

  // Reference value at p = 2: 6 ln(10 sqrt(6) / 0.5).
  CHECK(prop1_threshold(0.5, 3, 2.0, 1.0) ==
        doctest::Approx(23.349672049008111).epsilon(1e-13));

  // p -> infinity uses exponent one on the dimension factor.
  CHECK(prop1_threshold(0.5, 3, kInf, 1.0) ==
        doctest::Approx(6.0 * std::log(10.0 * 6.0 / 0.5)).epsilon(1e-13));
  const double p_large = prop1_threshold(0.5, 3, 1e9, 1.0);
  CHECK(p_large == doctest::Approx(prop1_threshold(0.5, 3, kInf, 1.0)).epsilon(1e-6));

  CHECK_THROWS_AS(prop1_threshold(0.5, 3, 0.9, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(prop1_threshold(0.5, 3, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("bound evaluation record") {
  BoundQuery q;
  q.epsilon = 0.1;
  q.modes = 10;
  q.c = 1.0;
  q.cardinality = 16;
  q.t = 0.1;
  const nlohmann::json j = evaluate_bounds(q);
  CHECK(j.at("prop2_threshold").at("threshold").get<double>() ==
        doctest::Approx(9210.3403719761827).epsilon(1e-12));
  CHECK(j.at("net_log_cardinality").get<double>() ==
        doctest::Approx(4.0 * 10.0 * std::log(50.0)).epsilon(1e-12));
  CHECK(j.contains("final_probability"));
  CHECK(j.at("mcdiarmid").at("trivial").get<bool>());
}
