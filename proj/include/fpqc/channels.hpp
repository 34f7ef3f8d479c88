#pragma once

#include <cstdint>
#include <vector>

#include "fpqc/majorana.hpp"

namespace fpqc {

// Monomial-coefficient picture needs 4^M coefficients.
inline constexpr int kExpansionModeBudget = 6;
// Choi matrices are 4^M x 4^M.
inline constexpr int kChoiModeBudget = 4;

// Expansion of an operator A over the monomial basis:
//   A = (1/2^M) sum_b alpha_b c(b),  alpha_b = Tr(c(b)^dag A).
// The coefficient at b = 0 is the trace of A.
class MonomialExpansion {
 public:
  MonomialExpansion(int modes, std::vector<Complex> coefficients);

  int modes() const { return modes_; }
  std::int64_t basis_size() const { return std::int64_t{1} << (2 * modes_); }
  Complex coefficient(std::uint64_t bits) const { return coefficients_[bits]; }
  std::vector<Complex>& coefficients() { return coefficients_; }
  const std::vector<Complex>& coefficients() const { return coefficients_; }

 private:
  int modes_;
  std::vector<Complex> coefficients_;
};

MonomialExpansion expand(const DenseOperator& a);
DenseOperator reconstruct(const MonomialExpansion& expansion);

// Per-Majorana damping: c(b) -> prod_{k: b_k=1} xi_k * c(b). Coefficients are
// restricted to [0, 1]; within that range the map is always a mixture of
// single-Majorana reflections and hence CP (see choi tests).
class AttenuationChannel {
 public:
  AttenuationChannel(int modes, std::vector<double> xi);

  int modes() const { return modes_; }
  const std::vector<double>& xi() const { return xi_; }

 private:
  int modes_;
  std::vector<double> xi_;
};

DenseOperator apply_attenuation(const AttenuationChannel& channel,
                                const DenseOperator& rho);

struct KrausTerm {
  double weight;
  MajoranaMonomial unitary;
};

// Finite mixture of monomial unitary conjugations. Weights must sum to one;
// every unitary is dense-checked at construction when the mode count fits the
// dense budget. Immutable and safe to share across workers.
class RandomUnitaryChannel {
 public:
  RandomUnitaryChannel(int modes, std::vector<KrausTerm> kraus);

  int modes() const { return modes_; }
  const std::vector<KrausTerm>& kraus() const { return kraus_; }

 private:
  int modes_;
  std::vector<KrausTerm> kraus_;
};

// The 2M unitaries {i * parity * c_ell} with uniform weights. Scales every
// off-diagonal covariance entry by (M-2)/M.
RandomUnitaryChannel fpqc_paper(int modes);

// All 4^M Hermitian-normalized monomials with uniform weights; sends every
// input to the maximally mixed state.
RandomUnitaryChannel fpqc_full(int modes);

// subset_size monomials drawn i.i.d. uniformly (with replacement) from the
// 4^M-element monomial group, Hermitian-normalized, uniform weights.
// Deterministic given the seed.
RandomUnitaryChannel fpqc_random_subset(int modes, std::int64_t subset_size,
                                        std::uint64_t seed);

DenseOperator apply(const RandomUnitaryChannel& channel, const DenseOperator& rho);

struct ChoiDiagnostics {
  bool is_cp;
  bool is_tp;
  double min_eigenvalue;  // smallest Choi eigenvalue
  double tp_residual;     // max deviation of the partial trace from identity
};

ChoiDiagnostics choi_cp_check(const RandomUnitaryChannel& channel);
ChoiDiagnostics choi_cp_check(const AttenuationChannel& channel);
// Attenuation diagnostics without the [0,1] range restriction, for probing
// coefficient patterns outside the physical family.
ChoiDiagnostics attenuation_choi_diagnostics(int modes, const std::vector<double>& xi);

}  // namespace fpqc
