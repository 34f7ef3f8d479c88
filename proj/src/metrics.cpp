#include "fpqc/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace fpqc {

namespace {

Eigen::VectorXd singular_values(const DenseOperator& a) {
  const double herm_err = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es((a + a.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigendecomposition failed in schatten_norm");
    return es.eigenvalues().cwiseAbs();
  }
  Eigen::JacobiSVD<DenseOperator> svd(a);
  return svd.singularValues();
}

}  // namespace

double schatten_norm(const DenseOperator& a, double p) {
  if (std::isnan(p) || p < 1.0)
    throw std::invalid_argument("Schatten order must satisfy p >= 1");
  if (a.rows() != a.cols()) throw std::invalid_argument("operator must be square");
  const Eigen::VectorXd sigma = singular_values(a);
  if (std::isinf(p)) return sigma.maxCoeff();
  if (p == 1.0) return sigma.sum();
  if (p == 2.0) return std::sqrt(sigma.squaredNorm());
  double sum = 0.0;
  for (std::int64_t i = 0; i < sigma.size(); ++i) sum += std::pow(sigma(i), p);
  return std::pow(sum, 1.0 / p);
}

double distance_to_mms(const DenseOperator& rho, double p) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("state must be square");
  if (std::abs(rho.trace() - Complex(1, 0)) > 1e-9)
    throw std::invalid_argument("state must have unit trace");
  const std::int64_t d = rho.rows();
  return schatten_norm(
      rho - DenseOperator::Identity(d, d) / static_cast<double>(d), p);
}

PqcVerdict pqc_test(const RandomUnitaryChannel& channel,
                    const std::vector<DenseOperator>& states, double epsilon,
                    double p, std::optional<int> dimension) {
  if (states.empty()) throw std::invalid_argument("state set must be nonempty");
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  const int d = dimension.value_or(1 << channel.modes());

  PqcVerdict verdict;
  verdict.p = p;
  verdict.epsilon = epsilon;
  verdict.dimension = d;
  verdict.threshold =
      std::isinf(p) ? epsilon / d
                    : epsilon / std::pow(static_cast<double>(d), (p - 1.0) / p);
  verdict.measured = 0.0;
  for (const DenseOperator& rho : states)
    verdict.measured = std::max(verdict.measured,
                                distance_to_mms(apply(channel, rho), p));
  verdict.passes = verdict.measured <= verdict.threshold;
  return verdict;
}

}  // namespace fpqc
