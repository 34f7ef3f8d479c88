#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "fpqc/majorana.hpp"

namespace fpqc {

// Real skew-symmetric 2M x 2M matrix, validated at construction.
class SkewSymmetricMatrix {
 public:
  explicit SkewSymmetricMatrix(RealMatrix m);

  const RealMatrix& matrix() const { return m_; }
  int modes() const { return static_cast<int>(m_.rows()) / 2; }
  std::int64_t size() const { return m_.rows(); }

  // R - R^T for a matrix R of independent standard normals.
  static SkewSymmetricMatrix random(int modes, std::uint64_t seed);

 private:
  RealMatrix m_;
};

// Canonical form Gamma = frame * blockdiag([[0, s],[−s, 0]]) * frame^T with
// the block values `spectrum` nonnegative and sorted descending.
//
// The frame is orthogonal. Its determinant is +1 whenever the Pfaffian of the
// input is nonnegative or some block value vanishes; a strictly negative
// Pfaffian forces det = -1 because no special-orthogonal frame can reach the
// all-nonnegative orientation in that case.
struct NormalForm {
  RealMatrix frame;
  std::vector<double> spectrum;

  int modes() const { return static_cast<int>(spectrum.size()); }
  RealMatrix reconstruct() const;
};

NormalForm normal_form(const SkewSymmetricMatrix& gamma);

// e^Gamma, evaluated through the canonical form; always special orthogonal.
RealMatrix skew_exponential(const SkewSymmetricMatrix& gamma);

// Skew-symmetric L with e^L = O for special orthogonal O.
SkewSymmetricMatrix special_orthogonal_log(const RealMatrix& orthogonal);

// Maps a quadratic-generator block value to the spectrum of the Gibbs state
// it generates (inverse temperature 1): s -> tanh(|s|), always in [0, 1).
double state_spectrum_from_generator(double block_value);

// Dense unitary whose conjugation action on the Majorana operators is
// c_k -> sum_m (e^Gamma)_{km} c_m.
DenseOperator gaussian_unitary(const SkewSymmetricMatrix& gamma);

// Correlation matrix C_{mn} = (i/2) Tr(rho [c_m, c_n]). For the product state
// with spectrum lambda and identity frame the mode-k block is
// [[0, -lambda_k], [lambda_k, 0]]; this orientation is pinned by the relation
// |0><0|_k = (1 - i c_{2k-1} c_{2k}) / 2.
SkewSymmetricMatrix covariance_of(const DenseOperator& rho);

// M-mode even Gaussian state, parameterized by its normal-form spectrum in
// [0,1]^M and an orthogonal frame. Immutable; the dense density matrix is
// materialized lazily exactly once and then shared.
class FermionicGaussianState {
 public:
  FermionicGaussianState(std::vector<double> spectrum, RealMatrix frame);

  int modes() const { return static_cast<int>(spectrum_.size()); }
  const std::vector<double>& spectrum() const { return spectrum_; }
  const RealMatrix& frame() const { return frame_; }

  const DenseOperator& density() const;

 private:
  std::vector<double> spectrum_;
  RealMatrix frame_;
  struct Cache {
    std::once_flag flag;
    DenseOperator density;
  };
  std::shared_ptr<Cache> cache_;
};

// Builds the state with the given spectrum and frame. Frames of determinant
// -1 are realized by composing the Gaussian unitary with the single-mode
// reflection i * parity * c_{2M}.
FermionicGaussianState state_from_spectrum(std::vector<double> spectrum,
                                           RealMatrix frame);

// Sum over modes of the binary entropy of (1 + lambda_k)/2, in bits.
double entropy(const FermionicGaussianState& state);

// Tr(rho^2) = prod_k (1 + lambda_k^2)/2; frame-independent.
double purity(const FermionicGaussianState& state);

enum class StatePurity { Pure, Mixed };

// Frame drawn Haar-uniformly from O(2M) (QR of a standard normal matrix with
// the usual sign fix), determinant corrected to +1 by negating the last
// column. Spectrum all ones when pure, i.i.d. uniform on [0,1] otherwise.
// Deterministic given the seed.
FermionicGaussianState random_gaussian_state(int modes, StatePurity purity,
                                             std::uint64_t seed);

}  // namespace fpqc
