#include "fpqc/channels.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "fpqc/rng.hpp"

namespace fpqc {

namespace {

void check_expansion_budget(int modes) {
  if (modes > kExpansionModeBudget)
    throw std::length_error("monomial expansion limited to " +
                            std::to_string(kExpansionModeBudget) + " modes, got " +
                            std::to_string(modes));
}

int modes_from_dimension(const DenseOperator& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("operator must be square");
  int modes = 0;
  while ((std::int64_t{1} << modes) < a.rows()) ++modes;
  if (modes < 1 || (std::int64_t{1} << modes) != a.rows())
    throw std::invalid_argument("operator dimension must be a power of two, >= 2");
  return modes;
}

double xi_product(const std::vector<double>& xi, std::uint64_t bits) {
  double p = 1.0;
  std::uint64_t b = bits;
  while (b != 0) {
    p *= xi[std::countr_zero(b)];
    b &= b - 1;
  }
  return p;
}

DenseOperator apply_xi(int modes, const std::vector<double>& xi,
                       const DenseOperator& rho) {
  MonomialExpansion exp = expand(rho);
  for (std::int64_t b = 1; b < exp.basis_size(); ++b)
    exp.coefficients()[b] *= xi_product(xi, static_cast<std::uint64_t>(b));
  return reconstruct(exp);
}

ChoiDiagnostics choi_diagnostics(
    int modes, const std::function<DenseOperator(const DenseOperator&)>& channel) {
  if (modes > kChoiModeBudget)
    throw std::length_error("Choi matrix limited to " +
                            std::to_string(kChoiModeBudget) + " modes, got " +
                            std::to_string(modes));
  const std::int64_t d = std::int64_t{1} << modes;
  DenseOperator choi = DenseOperator::Zero(d * d, d * d);
  DenseOperator tr_out = DenseOperator::Zero(d, d);
  DenseOperator unit = DenseOperator::Zero(d, d);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      unit.setZero();
      unit(i, j) = 1.0;
      const DenseOperator out = channel(unit);
      for (std::int64_t x = 0; x < d; ++x)
        for (std::int64_t y = 0; y < d; ++y) choi(x * d + i, y * d + j) = out(x, y);
      tr_out(i, j) = out.trace();
    }

  Eigen::SelfAdjointEigenSolver<DenseOperator> es((choi + choi.adjoint()) / 2.0);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("Choi eigendecomposition failed");
  const double min_eig = es.eigenvalues().minCoeff();
  const double tp_residual =
      (tr_out - DenseOperator::Identity(d, d)).cwiseAbs().maxCoeff();
  return ChoiDiagnostics{min_eig >= -1e-10, tp_residual <= 1e-10, min_eig,
                         tp_residual};
}

}  // namespace

MonomialExpansion::MonomialExpansion(int modes, std::vector<Complex> coefficients)
    : modes_(modes), coefficients_(std::move(coefficients)) {
  check_expansion_budget(modes_);
  if (static_cast<std::int64_t>(coefficients_.size()) != basis_size())
    throw std::invalid_argument("expansion needs 4^M coefficients");
}

MonomialExpansion expand(const DenseOperator& a) {
  const int modes = modes_from_dimension(a);
  check_expansion_budget(modes);
  const std::int64_t count = std::int64_t{1} << (2 * modes);
  std::vector<Complex> coeff(count);
  for (std::int64_t b = 0; b < count; ++b) {
    const SignedPermutation sp =
        MajoranaMonomial(modes, static_cast<std::uint64_t>(b)).signed_permutation();
    coeff[b] = trace_inner_adjoint(sp, a);
  }
  return MonomialExpansion(modes, std::move(coeff));
}

DenseOperator reconstruct(const MonomialExpansion& expansion) {
  const int modes = expansion.modes();
  const std::int64_t d = std::int64_t{1} << modes;
  DenseOperator out = DenseOperator::Zero(d, d);
  for (std::int64_t b = 0; b < expansion.basis_size(); ++b) {
    const Complex alpha = expansion.coefficient(static_cast<std::uint64_t>(b));
    if (alpha == Complex(0, 0)) continue;
    const SignedPermutation sp =
        MajoranaMonomial(modes, static_cast<std::uint64_t>(b)).signed_permutation();
    for (std::int64_t j = 0; j < d; ++j)
      out(sp.perm[j], j) += alpha * Phase::i_power(sp.phase_q[j]).value();
  }
  return out / static_cast<double>(d);
}

AttenuationChannel::AttenuationChannel(int modes, std::vector<double> xi)
    : modes_(modes), xi_(std::move(xi)) {
  if (modes_ < 1) throw std::invalid_argument("mode count must be positive");
  if (static_cast<int>(xi_.size()) != 2 * modes_)
    throw std::invalid_argument("attenuation needs one coefficient per Majorana (2M)");
  for (double x : xi_)
    if (x < 0.0 || x > 1.0)
      throw std::invalid_argument("attenuation coefficients must lie in [0, 1]");
}

DenseOperator apply_attenuation(const AttenuationChannel& channel,
                                const DenseOperator& rho) {
  if (modes_from_dimension(rho) != channel.modes())
    throw std::invalid_argument("state dimension does not match the channel");
  return apply_xi(channel.modes(), channel.xi(), rho);
}

RandomUnitaryChannel::RandomUnitaryChannel(int modes, std::vector<KrausTerm> kraus)
    : modes_(modes), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus term");
  double total = 0.0;
  for (const KrausTerm& term : kraus_) {
    if (term.weight <= 0.0) throw std::invalid_argument("Kraus weights must be positive");
    if (term.unitary.modes() != modes_)
      throw std::invalid_argument("Kraus operator mode mismatch");
    total += term.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("Kraus weights must sum to 1");
  if (modes_ <= kDenseModeBudget) {
    const std::int64_t d = std::int64_t{1} << modes_;
    for (const KrausTerm& term : kraus_) {
      const DenseOperator u = term.unitary.to_dense();
      const double err =
          (u * u.adjoint() - DenseOperator::Identity(d, d)).cwiseAbs().maxCoeff();
      if (err > 1e-12)
        throw std::invalid_argument("Kraus operator failed the unitarity check");
    }
  }
}

RandomUnitaryChannel fpqc_paper(int modes) {
  std::vector<KrausTerm> kraus;
  kraus.reserve(2 * modes);
  for (int ell = 1; ell <= 2 * modes; ++ell)
    kraus.push_back({1.0 / (2 * modes), fpqc_unitary(ell, modes)});
  return RandomUnitaryChannel(modes, std::move(kraus));
}

RandomUnitaryChannel fpqc_full(int modes) {
  check_expansion_budget(modes);
  const std::int64_t count = std::int64_t{1} << (2 * modes);
  std::vector<KrausTerm> kraus;
  kraus.reserve(count);
  for (std::int64_t b = 0; b < count; ++b)
    kraus.push_back({1.0 / static_cast<double>(count),
                     hermitian_monomial(modes, static_cast<std::uint64_t>(b))});
  return RandomUnitaryChannel(modes, std::move(kraus));
}

RandomUnitaryChannel fpqc_random_subset(int modes, std::int64_t subset_size,
                                        std::uint64_t seed) {
  if (modes < 1 || modes > kMonomialModeLimit)
    throw std::invalid_argument("invalid mode count");
  if (subset_size < 1) throw std::invalid_argument("subset size must be positive");
  const std::uint64_t group_size =
      (modes == 32) ? 0 : (std::uint64_t{1} << (2 * modes));  // 0 = full 64-bit range
  if (group_size != 0 &&
      static_cast<std::uint64_t>(subset_size) > group_size)
    throw std::invalid_argument("subset size exceeds the 4^M monomial group");
  rng::Engine eng = rng::make_engine(rng::derive_seed(seed, 0x5542u));
  std::vector<KrausTerm> kraus;
  kraus.reserve(subset_size);
  for (std::int64_t i = 0; i < subset_size; ++i)
    kraus.push_back({1.0 / static_cast<double>(subset_size),
                     hermitian_monomial(modes, rng::bounded_uint(eng, group_size))});
  return RandomUnitaryChannel(modes, std::move(kraus));
}

DenseOperator apply(const RandomUnitaryChannel& channel, const DenseOperator& rho) {
  if (modes_from_dimension(rho) != channel.modes())
    throw std::invalid_argument("state dimension does not match the channel");
  const std::int64_t d = rho.rows();
  DenseOperator out = DenseOperator::Zero(d, d);
  for (const KrausTerm& term : channel.kraus())
    out += term.weight * conjugate(term.unitary.signed_permutation(), rho);
  return out;
}

ChoiDiagnostics choi_cp_check(const RandomUnitaryChannel& channel) {
  return choi_diagnostics(channel.modes(),
                          [&](const DenseOperator& a) { return apply(channel, a); });
}

ChoiDiagnostics choi_cp_check(const AttenuationChannel& channel) {
  return attenuation_choi_diagnostics(channel.modes(), channel.xi());
}

ChoiDiagnostics attenuation_choi_diagnostics(int modes,
                                             const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != 2 * modes)
    throw std::invalid_argument("attenuation needs one coefficient per Majorana (2M)");
  return choi_diagnostics(
      modes, [&](const DenseOperator& a) { return apply_xi(modes, xi, a); });
}

}  // namespace fpqc
