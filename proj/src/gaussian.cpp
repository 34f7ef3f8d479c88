#include "fpqc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "fpqc/rng.hpp"

namespace fpqc {

namespace {

constexpr double kOrthogonalityTol = 1e-10;

// A 2x2 plane of the canonical decomposition: columns (i0, i1) of the Schur
// frame carry the block value `value`.
struct Plane {
  double value;
  int i0;
  int i1;
};

double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void check_orthogonal(const RealMatrix& o, double tol) {
  if (o.rows() != o.cols()) throw std::invalid_argument("frame must be square");
  const RealMatrix gram = o.transpose() * o;
  const double err = (gram - RealMatrix::Identity(o.rows(), o.cols())).cwiseAbs().maxCoeff();
  if (err > tol)
    throw std::invalid_argument("frame is not orthogonal (residual " +
                                std::to_string(err) + ")");
}

// Splits the quasi-diagonal Schur form of a normal matrix into 2x2 planes.
// `ones` / `minus_ones` collect 1x1 blocks at +1 / -1 (orthogonal input);
// for skew input every 1x1 block must sit at zero and is paired into a
// zero-value plane.
struct SchurPlanes {
  RealMatrix q;
  std::vector<Plane> planes;      // genuine 2x2 blocks, value = skew part
  std::vector<int> singles;       // indices of 1x1 blocks
  std::vector<double> single_values;
};

SchurPlanes schur_planes(const RealMatrix& m) {
  Eigen::RealSchur<RealMatrix> schur(m);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("real Schur decomposition failed to converge");
  SchurPlanes out;
  out.q = schur.matrixU();
  const RealMatrix& t = schur.matrixT();
  const int n = static_cast<int>(m.rows());
  int i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      out.planes.push_back({(t(i, i + 1) - t(i + 1, i)) / 2.0, i, i + 1});
      i += 2;
    } else {
      out.singles.push_back(i);
      out.single_values.push_back(t(i, i));
      i += 1;
    }
  }
  return out;
}

DenseOperator majorana_pair_dense(int m, int n, int modes) {
  return (majorana_operator(m + 1, modes) * majorana_operator(n + 1, modes))
      .signed_permutation()
      .to_dense();
}

}  // namespace

SkewSymmetricMatrix::SkewSymmetricMatrix(RealMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("matrix must be square");
  if (m_.rows() % 2 != 0)
    throw std::invalid_argument("skew-symmetric generators have even size 2M");
  if (m_.rows() == 0) throw std::invalid_argument("matrix must be nonempty");
  const double scale = std::max(1.0, max_abs(m_));
  const double err = (m_ + m_.transpose()).cwiseAbs().maxCoeff();
  if (err > 1e-12 * scale)
    throw std::invalid_argument("matrix is not skew-symmetric (residual " +
                                std::to_string(err) + ")");
}

SkewSymmetricMatrix SkewSymmetricMatrix::random(int modes, std::uint64_t seed) {
  if (modes < 1) throw std::invalid_argument("mode count must be positive");
  rng::Engine eng = rng::make_engine(seed);
  RealMatrix r(2 * modes, 2 * modes);
  for (std::int64_t i = 0; i < r.rows(); ++i)
    for (std::int64_t j = 0; j < r.cols(); ++j) r(i, j) = rng::standard_normal(eng);
  return SkewSymmetricMatrix(r - r.transpose().eval());
}

RealMatrix NormalForm::reconstruct() const {
  const int n = static_cast<int>(frame.rows());
  RealMatrix a = RealMatrix::Zero(n, n);
  for (int k = 0; k < modes(); ++k) {
    a(2 * k, 2 * k + 1) = spectrum[k];
    a(2 * k + 1, 2 * k) = -spectrum[k];
  }
  return frame * a * frame.transpose();
}

NormalForm normal_form(const SkewSymmetricMatrix& gamma) {
  const RealMatrix& g = gamma.matrix();
  SchurPlanes sp = schur_planes(g);

  // Real eigenvalues of a skew-symmetric matrix are zero; a 1x1 block with a
  // large value means the decomposition went wrong.
  const double scale = std::max(1.0, max_abs(g));
  for (double v : sp.single_values)
    if (std::abs(v) > 1e-8 * scale)
      throw std::runtime_error("unexpected real eigenvalue in skew canonical form");
  for (std::size_t j = 0; j + 1 < sp.singles.size(); j += 2)
    sp.planes.push_back({0.0, sp.singles[j], sp.singles[j + 1]});
  if (sp.singles.size() % 2 != 0)
    throw std::runtime_error("odd number of zero blocks in even-sized matrix");

  // Orient each plane so its value is nonnegative (swapping the two columns
  // transposes the block), then sort descending, ties by original position.
  RealMatrix frame(g.rows(), g.cols());
  for (Plane& p : sp.planes)
    if (p.value < 0.0) {
      std::swap(p.i0, p.i1);
      p.value = -p.value;
    }
  std::stable_sort(sp.planes.begin(), sp.planes.end(),
                   [](const Plane& a, const Plane& b) { return a.value > b.value; });
  std::vector<double> spectrum;
  spectrum.reserve(sp.planes.size());
  for (std::size_t k = 0; k < sp.planes.size(); ++k) {
    frame.col(2 * k) = sp.q.col(sp.planes[k].i0);
    frame.col(2 * k + 1) = sp.q.col(sp.planes[k].i1);
    spectrum.push_back(sp.planes[k].value);
  }

  // A negative determinant can be repaired for free on a zero block; with all
  // block values positive it is forced by a negative Pfaffian and stays.
  if (frame.determinant() < 0.0) {
    for (std::size_t k = sp.planes.size(); k-- > 0;) {
      if (spectrum[k] <= 1e-12) {
        frame.col(2 * k + 1) *= -1.0;
        break;
      }
    }
  }

  NormalForm nf{std::move(frame), std::move(spectrum)};
  const double residual = (nf.reconstruct() - g).cwiseAbs().maxCoeff();
  if (residual > 1e-8 * scale)
    throw std::runtime_error("canonical form residual too large: " +
                             std::to_string(residual));
  return nf;
}

RealMatrix skew_exponential(const SkewSymmetricMatrix& gamma) {
  const NormalForm nf = normal_form(gamma);
  const int n = static_cast<int>(gamma.size());
  RealMatrix rot = RealMatrix::Zero(n, n);
  for (int k = 0; k < nf.modes(); ++k) {
    const double c = std::cos(nf.spectrum[k]);
    const double s = std::sin(nf.spectrum[k]);
    rot(2 * k, 2 * k) = c;
    rot(2 * k, 2 * k + 1) = s;
    rot(2 * k + 1, 2 * k) = -s;
    rot(2 * k + 1, 2 * k + 1) = c;
  }
  return nf.frame * rot * nf.frame.transpose();
}

SkewSymmetricMatrix special_orthogonal_log(const RealMatrix& orthogonal) {
  check_orthogonal(orthogonal, kOrthogonalityTol);
  if (orthogonal.determinant() < 0.0)
    throw std::domain_error("matrix logarithm requires determinant +1");

  Eigen::RealSchur<RealMatrix> schur(orthogonal);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("real Schur decomposition failed to converge");
  const RealMatrix& t = schur.matrixT();
  const RealMatrix& q = schur.matrixU();
  const int n = static_cast<int>(orthogonal.rows());

  RealMatrix log = RealMatrix::Zero(n, n);
  auto add_plane = [&](int i0, int i1, double theta) {
    const auto u = q.col(i0);
    const auto v = q.col(i1);
    log += theta * (u * v.transpose() - v * u.transpose());
  };

  std::vector<int> minus_ones;
  int i = 0;
  while (i < n) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      // Rotation block [[c, s], [-s, c]] up to roundoff.
      const double c = 0.5 * (t(i, i) + t(i + 1, i + 1));
      const double s = 0.5 * (t(i, i + 1) - t(i + 1, i));
      if (std::abs(c * c + s * s - 1.0) > 1e-8)
        throw std::invalid_argument("matrix is not orthogonal (bad rotation block)");
      add_plane(i, i + 1, std::atan2(s, c));
      i += 2;
    } else {
      const double v = t(i, i);
      if (std::abs(v - 1.0) <= 1e-8) {
        // fixed direction, zero contribution
      } else if (std::abs(v + 1.0) <= 1e-8) {
        minus_ones.push_back(i);
      } else {
        throw std::invalid_argument("matrix is not orthogonal (eigenvalue " +
                                    std::to_string(v) + ")");
      }
      i += 1;
    }
  }
  // Eigenvalues -1 pair into rotations by pi; det +1 guarantees an even count.
  if (minus_ones.size() % 2 != 0)
    throw std::domain_error("matrix logarithm requires determinant +1");
  for (std::size_t j = 0; j + 1 < minus_ones.size(); j += 2)
    add_plane(minus_ones[j], minus_ones[j + 1], std::numbers::pi);

  SkewSymmetricMatrix result(0.5 * (log - log.transpose().eval()));
  const double residual =
      (skew_exponential(result) - orthogonal).cwiseAbs().maxCoeff();
  if (residual > 1e-8)
    throw std::runtime_error("orthogonal logarithm residual too large: " +
                             std::to_string(residual));
  return result;
}

double state_spectrum_from_generator(double block_value) {
  return std::tanh(std::abs(block_value));
}

DenseOperator gaussian_unitary(const SkewSymmetricMatrix& gamma) {
  const int modes = gamma.modes();
  check_dense_budget(modes);
  const std::int64_t d = std::int64_t{1} << modes;
  const RealMatrix& g = gamma.matrix();

  // Generator (i/4) c^T Gamma c, normalized so that the conjugation action on
  // the Majorana vector is exactly e^Gamma; skew symmetry folds the double
  // sum into (i/2) Gamma_{mn} c_m c_n over m < n.
  DenseOperator h = DenseOperator::Zero(d, d);
  for (int m = 0; m < 2 * modes; ++m)
    for (int n = m + 1; n < 2 * modes; ++n) {
      if (g(m, n) == 0.0) continue;
      h += (Complex(0, 0.5) * g(m, n)) * majorana_pair_dense(m, n, modes);
    }
  h = (h + h.adjoint().eval()) / 2.0;

  Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed in gaussian_unitary");
  Eigen::VectorXcd exp_phase(d);
  for (std::int64_t j = 0; j < d; ++j)
    exp_phase(j) = std::exp(Complex(0, es.eigenvalues()(j)));
  return es.eigenvectors() * exp_phase.asDiagonal() * es.eigenvectors().adjoint();
}

SkewSymmetricMatrix covariance_of(const DenseOperator& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("state must be square");
  int modes = 0;
  while ((std::int64_t{1} << modes) < rho.rows()) ++modes;
  if (modes < 1 || (std::int64_t{1} << modes) != rho.rows())
    throw std::invalid_argument("state dimension must be a power of two, >= 2");
  if (std::abs(rho.trace() - Complex(1, 0)) > 1e-9)
    throw std::invalid_argument("state must have unit trace");

  RealMatrix cov = RealMatrix::Zero(2 * modes, 2 * modes);
  double worst_imag = 0.0;
  for (int m = 0; m < 2 * modes; ++m)
    for (int n = m + 1; n < 2 * modes; ++n) {
      const SignedPermutation mn =
          (majorana_operator(m + 1, modes) * majorana_operator(n + 1, modes))
              .signed_permutation();
      const SignedPermutation nm =
          (majorana_operator(n + 1, modes) * majorana_operator(m + 1, modes))
              .signed_permutation();
      const Complex value = Complex(0, 0.5) *
                            (trace_of_product(rho, mn) - trace_of_product(rho, nm));
      worst_imag = std::max(worst_imag, std::abs(value.imag()));
      cov(m, n) = value.real();
      cov(n, m) = -value.real();
    }
  if (worst_imag > 1e-10)
    throw std::runtime_error("correlation matrix has imaginary residue " +
                             std::to_string(worst_imag));
  return SkewSymmetricMatrix(std::move(cov));
}

FermionicGaussianState::FermionicGaussianState(std::vector<double> spectrum,
                                               RealMatrix frame)
    : spectrum_(std::move(spectrum)),
      frame_(std::move(frame)),
      cache_(std::make_shared<Cache>()) {
  if (spectrum_.empty()) throw std::invalid_argument("state needs at least one mode");
  for (double& l : spectrum_) {
    if (l < -1e-12 || l > 1.0 + 1e-12)
      throw std::invalid_argument("spectrum values must lie in [0, 1]");
    l = std::clamp(l, 0.0, 1.0);
  }
  if (frame_.rows() != 2 * static_cast<std::int64_t>(spectrum_.size()) ||
      frame_.cols() != frame_.rows())
    throw std::invalid_argument("frame must be 2M x 2M");
  check_orthogonal(frame_, kOrthogonalityTol);
}

const DenseOperator& FermionicGaussianState::density() const {
  std::call_once(cache_->flag, [this] {
    const int m = modes();
    check_dense_budget(m);
    const std::int64_t d = std::int64_t{1} << m;

    // Product form in the |0>/|1> basis: weight (1+l)/2 on |0> per mode.
    Eigen::VectorXd diag(d);
    for (std::int64_t j = 0; j < d; ++j) {
      double w = 1.0;
      for (int k = 0; k < m; ++k) {
        const bool excited = (j >> (m - 1 - k)) & 1;
        w *= excited ? (1.0 - spectrum_[k]) / 2.0 : (1.0 + spectrum_[k]) / 2.0;
      }
      diag(j) = w;
    }
    DenseOperator rho = DenseOperator::Zero(d, d);
    rho.diagonal() = diag.cast<Complex>();

    const RealMatrix eye = RealMatrix::Identity(frame_.rows(), frame_.cols());
    if ((frame_ - eye).cwiseAbs().maxCoeff() <= 1e-14) {
      cache_->density = std::move(rho);
      return;
    }

    DenseOperator w;
    if (frame_.determinant() > 0.0) {
      w = gaussian_unitary(special_orthogonal_log(frame_));
    } else {
      // O = O' R with R the reflection of c_{2M}, realized by i*parity*c_{2M}.
      RealMatrix flipped = frame_;
      flipped.col(flipped.cols() - 1) *= -1.0;
      w = fpqc_unitary(2 * m, m).to_dense() *
          gaussian_unitary(special_orthogonal_log(flipped));
    }
    cache_->density = w * rho * w.adjoint();
  });
  return cache_->density;
}

FermionicGaussianState state_from_spectrum(std::vector<double> spectrum,
                                           RealMatrix frame) {
  return FermionicGaussianState(std::move(spectrum), std::move(frame));
}

double entropy(const FermionicGaussianState& state) {
  auto h2 = [](double x) {
    double out = 0.0;
    if (x > 0.0) out -= x * std::log2(x);
    if (x < 1.0) out -= (1.0 - x) * std::log2(1.0 - x);
    return out;
  };
  double total = 0.0;
  for (double l : state.spectrum()) total += h2((1.0 + l) / 2.0);
  return total;
}

double purity(const FermionicGaussianState& state) {
  double p = 1.0;
  for (double l : state.spectrum()) p *= (1.0 + l * l) / 2.0;
  return p;
}

FermionicGaussianState random_gaussian_state(int modes, StatePurity purity,
                                             std::uint64_t seed) {
  if (modes < 1) throw std::invalid_argument("mode count must be positive");
  rng::Engine eng = rng::make_engine(rng::derive_seed(seed, 0x5741u));
  const int n = 2 * modes;
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng::standard_normal(eng);

  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  if (q.determinant() < 0.0) q.col(n - 1) *= -1.0;

  std::vector<double> lambda(modes, 1.0);
  if (purity == StatePurity::Mixed)
    for (double& l : lambda) l = rng::uniform01(eng);
  return FermionicGaussianState(std::move(lambda), std::move(q));
}

}  // namespace fpqc
