#pragma once

// Brute-force reference routes used as oracles. Everything here goes through
// literal Kronecker products and dense matrix multiplication, independent of
// the signed-permutation fast paths in the library.

#include <Eigen/Dense>

#include "fpqc/channels.hpp"
#include "fpqc/gaussian.hpp"
#include "fpqc/majorana.hpp"

namespace oracle {

inline Eigen::Matrix2cd pauli_matrix(fpqc::Pauli p) {
  Eigen::Matrix2cd m;
  using fpqc::Complex;
  switch (p) {
    case fpqc::Pauli::I: m << 1, 0, 0, 1; break;
    case fpqc::Pauli::X: m << 0, 1, 1, 0; break;
    case fpqc::Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case fpqc::Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline fpqc::DenseOperator kron(const fpqc::DenseOperator& a,
                                const fpqc::DenseOperator& b) {
  fpqc::DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline fpqc::DenseOperator dense_pauli(const fpqc::PauliString& s) {
  fpqc::DenseOperator out = fpqc::DenseOperator::Identity(1, 1);
  for (fpqc::Pauli p : s.letters()) out = kron(out, pauli_matrix(p));
  return s.phase().value() * out;
}

// Monomial realized by multiplying the Jordan-Wigner factors densely, in
// ascending index order.
inline fpqc::DenseOperator dense_monomial(const fpqc::MajoranaMonomial& m) {
  const std::int64_t d = std::int64_t{1} << m.modes();
  fpqc::DenseOperator out = fpqc::DenseOperator::Identity(d, d);
  for (int k = 1; k <= 2 * m.modes(); ++k)
    if (m.bits() & (std::uint64_t{1} << (k - 1)))
      out = out * dense_pauli(fpqc::jordan_wigner(k, m.modes()));
  return m.phase().value() * out;
}

inline fpqc::DenseOperator apply_channel(const fpqc::RandomUnitaryChannel& ch,
                                         const fpqc::DenseOperator& rho) {
  fpqc::DenseOperator out = fpqc::DenseOperator::Zero(rho.rows(), rho.cols());
  for (const fpqc::KrausTerm& term : ch.kraus()) {
    const fpqc::DenseOperator u = dense_monomial(term.unitary);
    out += term.weight * u * rho * u.adjoint();
  }
  return out;
}

inline fpqc::RealMatrix covariance(const fpqc::DenseOperator& rho, int modes) {
  fpqc::RealMatrix cov = fpqc::RealMatrix::Zero(2 * modes, 2 * modes);
  for (int m = 0; m < 2 * modes; ++m)
    for (int n = 0; n < 2 * modes; ++n) {
      if (m == n) continue;
      const fpqc::DenseOperator cm = dense_monomial(fpqc::majorana_operator(m + 1, modes));
      const fpqc::DenseOperator cn = dense_monomial(fpqc::majorana_operator(n + 1, modes));
      cov(m, n) = (fpqc::Complex(0, 0.5) * (rho * (cm * cn - cn * cm)).trace()).real();
    }
  return cov;
}

inline double trace_distance(const fpqc::DenseOperator& a,
                             const fpqc::DenseOperator& b) {
  Eigen::SelfAdjointEigenSolver<fpqc::DenseOperator> es(a - b);
  return es.eigenvalues().cwiseAbs().sum();
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

}  // namespace oracle
