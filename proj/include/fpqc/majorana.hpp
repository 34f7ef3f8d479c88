#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fpqc {

using Complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

// Dense realizations are 2^M x 2^M; beyond this mode count they fail loudly
// instead of silently approximating.
inline constexpr int kDenseModeBudget = 10;
// Monomial bit strings live in a single 64-bit word (2M <= 64).
inline constexpr int kMonomialModeLimit = 32;

// Throws std::length_error when 2^modes exceeds the dense budget.
void check_dense_budget(int modes);

// Fourth root of unity i^q. Monomial phase arithmetic is integer-exact; no
// floating point is involved until a dense realization is requested.
class Phase {
 public:
  constexpr Phase() = default;
  static constexpr Phase i_power(int q) {
    return Phase(static_cast<std::uint8_t>(((q % 4) + 4) % 4));
  }
  static constexpr Phase one() { return i_power(0); }
  static constexpr Phase imaginary_unit() { return i_power(1); }
  static constexpr Phase minus_one() { return i_power(2); }

  constexpr int exponent() const { return q_; }
  constexpr Phase operator*(Phase o) const {
    return Phase(static_cast<std::uint8_t>((q_ + o.q_) & 3));
  }
  constexpr Phase conjugated() const {
    return Phase(static_cast<std::uint8_t>((4 - q_) & 3));
  }
  constexpr bool operator==(const Phase&) const = default;

  Complex value() const;
  std::string str() const;  // "+1", "+i", "-1", "-i"
  static Phase parse(const std::string& s);

 private:
  explicit constexpr Phase(std::uint8_t q) : q_(q) {}
  std::uint8_t q_ = 0;
};

enum class Pauli : std::uint8_t { I, X, Y, Z };

char pauli_char(Pauli p);

// Sparse form of a phase-tracked Pauli string: column j of the dense matrix
// has its single nonzero entry i^{phase_q[j]} at row perm[j].
struct SignedPermutation {
  std::vector<std::int64_t> perm;
  std::vector<std::uint8_t> phase_q;

  std::int64_t dimension() const { return static_cast<std::int64_t>(perm.size()); }
  DenseOperator to_dense() const;
};

// U rho U^dag for a signed-permutation unitary U; O(dim^2).
DenseOperator conjugate(const SignedPermutation& u, const DenseOperator& rho);
// Tr(A^dag rho) for a signed-permutation A; O(dim).
Complex trace_inner_adjoint(const SignedPermutation& a, const DenseOperator& rho);
// Tr(rho A); O(dim).
Complex trace_of_product(const DenseOperator& rho, const SignedPermutation& a);

// Phase-tracked Pauli string on `modes` qubits. Qubit 1 is the leftmost
// (most significant) tensor factor of the dense realization.
class PauliString {
 public:
  PauliString(int modes, std::vector<Pauli> letters, Phase phase = Phase::one());
  static PauliString identity(int modes);

  int modes() const { return modes_; }
  const std::vector<Pauli>& letters() const { return letters_; }
  Phase phase() const { return phase_; }
  PauliString with_phase(Phase p) const { return PauliString(modes_, letters_, p); }

  PauliString operator*(const PauliString& rhs) const;
  PauliString adjoint() const;
  bool operator==(const PauliString&) const = default;

  SignedPermutation signed_permutation() const;
  DenseOperator to_dense() const;
  std::string str() const;

 private:
  int modes_;
  std::vector<Pauli> letters_;
  Phase phase_;
};

// Product of Majorana operators, phase * c_1^{b_1} c_2^{b_2} ... c_{2M}^{b_{2M}},
// with factors in ascending index order. Bit k-1 of `bits` flags the presence
// of c_k. Reordering signs are absorbed into the phase at construction, so
// equality and XOR products are well defined.
class MajoranaMonomial {
 public:
  MajoranaMonomial(int modes, std::uint64_t bits, Phase phase = Phase::one());
  static MajoranaMonomial identity(int modes);

  int modes() const { return modes_; }
  std::uint64_t bits() const { return bits_; }
  Phase phase() const { return phase_; }
  int weight() const;  // number of Majorana factors

  MajoranaMonomial operator*(const MajoranaMonomial& rhs) const;
  MajoranaMonomial adjoint() const;
  bool is_hermitian() const;
  bool operator==(const MajoranaMonomial&) const = default;

  PauliString to_pauli() const;
  SignedPermutation signed_permutation() const;
  DenseOperator to_dense() const;
  std::string str() const;

 private:
  int modes_;
  std::uint64_t bits_;
  Phase phase_;
};

// c_k on M modes as a Z...ZX(I...) / Z...ZY(I...) string; k in 1..2M.
PauliString jordan_wigner(int k, int modes);
// c_k as a monomial.
MajoranaMonomial majorana_operator(int k, int modes);
// parity = (-1)^M c_1 ... c_{2M}; anticommutes with every c_k.
MajoranaMonomial parity_operator(int modes);
// U_ell = i * parity * c_ell; conjugation flips the sign of c_ell and fixes
// all other Majorana operators.
MajoranaMonomial fpqc_unitary(int ell, int modes);
// c(bits) with the phase in {1, i} that makes it Hermitian (and hence a
// Hermitian unitary squaring to the identity).
MajoranaMonomial hermitian_monomial(int modes, std::uint64_t bits);

// +1 if conjugating c(b) by (any phase multiple of) c(a) leaves it fixed,
// -1 if it flips the sign.
int conjugation_sign(std::uint64_t a_bits, std::uint64_t b_bits);

}  // namespace fpqc
