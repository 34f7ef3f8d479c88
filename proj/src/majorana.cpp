#include "fpqc/majorana.hpp"

#include <bit>
#include <stdexcept>

namespace fpqc {

namespace {

struct LetterProduct {
  Pauli letter;
  int phase_q;
};

// Single-qubit products with the standard convention X*Y = iZ, Y*Z = iX,
// Z*X = iY.
constexpr LetterProduct multiply_letters(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 0};
  if (b == Pauli::I) return {a, 0};
  if (a == b) return {Pauli::I, 0};
  switch (a) {
    case Pauli::X:
      return b == Pauli::Y ? LetterProduct{Pauli::Z, 1} : LetterProduct{Pauli::Y, 3};
    case Pauli::Y:
      return b == Pauli::Z ? LetterProduct{Pauli::X, 1} : LetterProduct{Pauli::Z, 3};
    case Pauli::Z:
      return b == Pauli::X ? LetterProduct{Pauli::Y, 1} : LetterProduct{Pauli::X, 3};
    default:
      return {Pauli::I, 0};
  }
}

void check_monomial_modes(int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be positive");
  if (modes > kMonomialModeLimit)
    throw std::invalid_argument("monomials support at most " +
                                std::to_string(kMonomialModeLimit) + " modes");
}

std::uint64_t bits_above(std::uint64_t bits, int index) {
  return index >= 63 ? 0 : bits >> (index + 1);
}

}  // namespace

void check_dense_budget(int modes) {
  if (modes > kDenseModeBudget)
    throw std::length_error("dense realization limited to " +
                            std::to_string(kDenseModeBudget) + " modes, got " +
                            std::to_string(modes));
}

Complex Phase::value() const {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[q_];
}

std::string Phase::str() const {
  static const char* table[4] = {"+1", "+i", "-1", "-i"};
  return table[q_];
}

Phase Phase::parse(const std::string& s) {
  for (int q = 0; q < 4; ++q)
    if (i_power(q).str() == s) return i_power(q);
  throw std::invalid_argument("unrecognized phase '" + s + "'");
}

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

DenseOperator SignedPermutation::to_dense() const {
  const std::int64_t d = dimension();
  DenseOperator out = DenseOperator::Zero(d, d);
  for (std::int64_t j = 0; j < d; ++j)
    out(perm[j], j) = Phase::i_power(phase_q[j]).value();
  return out;
}

DenseOperator conjugate(const SignedPermutation& u, const DenseOperator& rho) {
  const std::int64_t d = u.dimension();
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("dimension mismatch in conjugation");
  DenseOperator out(d, d);
  for (std::int64_t j = 0; j < d; ++j) {
    const Complex pj = Phase::i_power(u.phase_q[j]).value();
    for (std::int64_t k = 0; k < d; ++k) {
      const Complex pk = Phase::i_power(u.phase_q[k]).conjugated().value();
      out(u.perm[j], u.perm[k]) = pj * pk * rho(j, k);
    }
  }
  return out;
}

Complex trace_inner_adjoint(const SignedPermutation& a, const DenseOperator& rho) {
  const std::int64_t d = a.dimension();
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("dimension mismatch in trace");
  Complex sum = 0;
  for (std::int64_t j = 0; j < d; ++j)
    sum += Phase::i_power(a.phase_q[j]).conjugated().value() * rho(a.perm[j], j);
  return sum;
}

Complex trace_of_product(const DenseOperator& rho, const SignedPermutation& a) {
  const std::int64_t d = a.dimension();
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("dimension mismatch in trace");
  Complex sum = 0;
  for (std::int64_t j = 0; j < d; ++j)
    sum += rho(j, a.perm[j]) * Phase::i_power(a.phase_q[j]).value();
  return sum;
}

PauliString::PauliString(int modes, std::vector<Pauli> letters, Phase phase)
    : modes_(modes), letters_(std::move(letters)), phase_(phase) {
  if (modes_ < 1) throw std::invalid_argument("mode count must be positive");
  if (static_cast<int>(letters_.size()) != modes_)
    throw std::invalid_argument("letter count must equal the mode count");
}

PauliString PauliString::identity(int modes) {
  return PauliString(modes, std::vector<Pauli>(modes, Pauli::I));
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (modes_ != rhs.modes_)
    throw std::invalid_argument("mode mismatch in Pauli product");
  std::vector<Pauli> letters(modes_);
  int q = phase_.exponent() + rhs.phase_.exponent();
  for (int k = 0; k < modes_; ++k) {
    const LetterProduct p = multiply_letters(letters_[k], rhs.letters_[k]);
    letters[k] = p.letter;
    q += p.phase_q;
  }
  return PauliString(modes_, std::move(letters), Phase::i_power(q));
}

PauliString PauliString::adjoint() const {
  // Every letter is Hermitian; only the scalar phase conjugates.
  return PauliString(modes_, letters_, phase_.conjugated());
}

SignedPermutation PauliString::signed_permutation() const {
  const std::int64_t d = std::int64_t{1} << modes_;
  SignedPermutation sp;
  sp.perm.resize(d);
  sp.phase_q.resize(d);
  std::int64_t flip_mask = 0;
  for (int k = 0; k < modes_; ++k)
    if (letters_[k] == Pauli::X || letters_[k] == Pauli::Y)
      flip_mask |= std::int64_t{1} << (modes_ - 1 - k);
  for (std::int64_t j = 0; j < d; ++j) {
    int q = phase_.exponent();
    for (int k = 0; k < modes_; ++k) {
      const int bit = static_cast<int>((j >> (modes_ - 1 - k)) & 1);
      switch (letters_[k]) {
        case Pauli::Y: q += bit ? 3 : 1; break;
        case Pauli::Z: q += bit ? 2 : 0; break;
        default: break;
      }
    }
    sp.perm[j] = j ^ flip_mask;
    sp.phase_q[j] = static_cast<std::uint8_t>(q & 3);
  }
  return sp;
}

DenseOperator PauliString::to_dense() const {
  check_dense_budget(modes_);
  return signed_permutation().to_dense();
}

std::string PauliString::str() const {
  std::string out = phase_.str();
  out += ' ';
  for (Pauli p : letters_) out += pauli_char(p);
  return out;
}

MajoranaMonomial::MajoranaMonomial(int modes, std::uint64_t bits, Phase phase)
    : modes_(modes), bits_(bits), phase_(phase) {
  check_monomial_modes(modes);
  if (modes < 32 && (bits >> (2 * modes)) != 0)
    throw std::invalid_argument("monomial bits exceed 2M positions");
}

MajoranaMonomial MajoranaMonomial::identity(int modes) {
  return MajoranaMonomial(modes, 0);
}

int MajoranaMonomial::weight() const { return std::popcount(bits_); }

MajoranaMonomial MajoranaMonomial::operator*(const MajoranaMonomial& rhs) const {
  if (modes_ != rhs.modes_)
    throw std::invalid_argument("mode mismatch in monomial product");
  // Each factor of the right operand anticommutes past every factor of the
  // left operand with a strictly larger index; equal indices square to 1.
  int swaps = 0;
  std::uint64_t b = rhs.bits_;
  while (b != 0) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    swaps += std::popcount(bits_above(bits_, j));
  }
  const Phase phase = phase_ * rhs.phase_ * Phase::i_power(2 * (swaps & 1));
  return MajoranaMonomial(modes_, bits_ ^ rhs.bits_, phase);
}

MajoranaMonomial MajoranaMonomial::adjoint() const {
  // Reversing w pairwise-anticommuting Hermitian factors gives (-1)^{w(w-1)/2}.
  const int w = weight();
  const int reversal = (w * (w - 1) / 2) & 1;
  return MajoranaMonomial(modes_, bits_, phase_.conjugated() * Phase::i_power(2 * reversal));
}

bool MajoranaMonomial::is_hermitian() const { return adjoint() == *this; }

PauliString MajoranaMonomial::to_pauli() const {
  PauliString out = PauliString::identity(modes_);
  std::uint64_t b = bits_;
  while (b != 0) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    out = out * jordan_wigner(j + 1, modes_);
  }
  return out.with_phase(out.phase() * phase_);
}

SignedPermutation MajoranaMonomial::signed_permutation() const {
  return to_pauli().signed_permutation();
}

DenseOperator MajoranaMonomial::to_dense() const {
  check_dense_budget(modes_);
  return signed_permutation().to_dense();
}

std::string MajoranaMonomial::str() const {
  std::string out = phase_.str();
  if (bits_ == 0) return out;
  for (int k = 1; k <= 2 * modes_; ++k)
    if (bits_ & (std::uint64_t{1} << (k - 1))) out += " c" + std::to_string(k);
  return out;
}

PauliString jordan_wigner(int k, int modes) {
  check_monomial_modes(modes);
  if (k < 1 || k > 2 * modes)
    throw std::out_of_range("Majorana index " + std::to_string(k) +
                            " outside 1.." + std::to_string(2 * modes));
  const int site = (k + 1) / 2;  // qubit carrying the X or Y
  std::vector<Pauli> letters(modes, Pauli::I);
  for (int q = 1; q < site; ++q) letters[q - 1] = Pauli::Z;
  letters[site - 1] = (k % 2 == 1) ? Pauli::X : Pauli::Y;
  return PauliString(modes, std::move(letters));
}

MajoranaMonomial majorana_operator(int k, int modes) {
  check_monomial_modes(modes);
  if (k < 1 || k > 2 * modes)
    throw std::out_of_range("Majorana index " + std::to_string(k) +
                            " outside 1.." + std::to_string(2 * modes));
  return MajoranaMonomial(modes, std::uint64_t{1} << (k - 1));
}

MajoranaMonomial parity_operator(int modes) {
  check_monomial_modes(modes);
  const std::uint64_t all =
      (modes == 32) ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * modes)) - 1;
  return MajoranaMonomial(modes, all, Phase::i_power(2 * modes));
}

MajoranaMonomial fpqc_unitary(int ell, int modes) {
  const MajoranaMonomial p = parity_operator(modes) * majorana_operator(ell, modes);
  return MajoranaMonomial(modes, p.bits(), p.phase() * Phase::imaginary_unit());
}

MajoranaMonomial hermitian_monomial(int modes, std::uint64_t bits) {
  const int w = std::popcount(bits);
  return MajoranaMonomial(modes, bits, Phase::i_power((w * (w - 1) / 2) & 1));
}

int conjugation_sign(std::uint64_t a_bits, std::uint64_t b_bits) {
  const int wa = std::popcount(a_bits);
  const int wb = std::popcount(b_bits);
  const int shared = std::popcount(a_bits & b_bits);
  return ((wa * wb - shared) % 2 == 0) ? 1 : -1;
}

}  // namespace fpqc
