#include "ioncav/fock.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ioncav/error.hpp"

namespace ioncav {

namespace {

// Eigenvalues this small are rounding noise; their square roots would
// otherwise leak ~1e-8 each into the fidelity.
constexpr double kEigenFloor = 1e-14;

Matrix psd_sqrt(const Matrix& rho, const char* label) {
  const Matrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  if (w.minCoeff() < -kPsdTol) {
    throw InvalidArgument(std::string(label) + " is not positive semidefinite (eigenvalue " +
                          std::to_string(w.minCoeff()) + ")");
  }
  Eigen::VectorXd root(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    root(i) = w(i) > kEigenFloor ? std::sqrt(w(i)) : 0.0;
  }
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

double positive_trace(const FockDensity& rho) {
  const double tr = rho.trace();
  if (!(tr > 0.0)) {
    throw InvalidArgument("density has non-positive trace");
  }
  return tr;
}

void require_same_shape(const FockDensity& rho, const FockDensity& sigma) {
  if (rho.dim() != sigma.dim() || rho.is_joint() != sigma.is_joint() ||
      (rho.is_joint() && !(rho.dims() == sigma.dims()))) {
    throw InvalidArgument("state_metrics: densities live on different spaces");
  }
}

}  // namespace

FockDensity partial_trace(const FockDensity& joint, Mode keep) {
  if (!joint.is_joint()) {
    throw InvalidArgument("partial_trace needs a joint density");
  }
  const Index nc = joint.dims().cavity;
  const Index nv = joint.dims().vibration;
  const Matrix& rho = joint.matrix();
  if (keep == Mode::Cavity) {
    Matrix out(nc, nc);
    for (Index j = 0; j < nc; ++j) {
      for (Index i = 0; i < nc; ++i) {
        out(i, j) = rho.block(i * nv, j * nv, nv, nv).trace();
      }
    }
    return FockDensity::single(std::move(out));
  }
  Matrix out = Matrix::Zero(nv, nv);
  for (Index c = 0; c < nc; ++c) {
    out += rho.block(c * nv, c * nv, nv, nv);
  }
  return FockDensity::single(std::move(out));
}

double fidelity(const FockDensity& rho, const FockDensity& sigma) {
  require_same_shape(rho, sigma);
  // Nuclear norm of √ρ√σ; singular values keep absolute accuracy where
  // eigenvalues of √ρσ√ρ would need square roots of rounding noise.
  const Matrix product = psd_sqrt(rho.matrix(), "rho") * psd_sqrt(sigma.matrix(), "sigma");
  Eigen::BDCSVD<Matrix> svd(product);
  const double root_fidelity = svd.singularValues().sum();
  return root_fidelity * root_fidelity / (positive_trace(rho) * positive_trace(sigma));
}

double trace_distance(const FockDensity& rho, const FockDensity& sigma) {
  require_same_shape(rho, sigma);
  const Matrix diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double purity(const FockDensity& rho) {
  // tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
  return rho.matrix().squaredNorm();
}

StateMetrics state_metrics(const FockDensity& rho, const FockDensity& sigma) {
  return {fidelity(rho, sigma), trace_distance(rho, sigma), purity(rho)};
}

double fidelity_with_pure(const FockDensity& rho, const Vector& psi) {
  if (psi.size() != rho.dim()) {
    throw InvalidArgument("fidelity_with_pure: ket and density dimensions differ");
  }
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) {
    throw InvalidArgument("fidelity_with_pure: zero ket");
  }
  return (psi.adjoint() * rho.matrix() * psi).value().real() / (norm2 * positive_trace(rho));
}

ModeQuadStats quad_stats(const FockDensity& single_mode) {
  if (single_mode.is_joint()) {
    throw InvalidArgument("quad_stats expects a single-mode density; trace out a mode first");
  }
  const Matrix& rho = single_mode.matrix();
  const Index N = rho.rows();
  const double norm = rho.trace().real();
  if (!(norm > 0.0)) {
    throw InvalidArgument("quad_stats: density has non-positive trace");
  }

  // ⟨a⟩, ⟨a²⟩, ⟨a†a⟩ from the exact matrix elements; a a† = a†a + 1 is used
  // instead of the truncated product so the top level is not miscounted.
  Complex mean_a{};
  Complex mean_a2{};
  double mean_n = 0.0;
  for (Index n = 1; n < N; ++n) {
    mean_a += std::sqrt(static_cast<double>(n)) * rho(n, n - 1);
    mean_n += static_cast<double>(n) * rho(n, n).real();
    if (n >= 2) {
      mean_a2 += std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1)) * rho(n, n - 2);
    }
  }
  mean_a /= norm;
  mean_a2 /= norm;
  mean_n /= norm;

  ModeQuadStats s;
  s.mean_x = std::numbers::sqrt2 * mean_a.real();
  s.mean_p = std::numbers::sqrt2 * mean_a.imag();
  s.var_x = mean_a2.real() + mean_n + 0.5 - s.mean_x * s.mean_x;
  s.var_p = -mean_a2.real() + mean_n + 0.5 - s.mean_p * s.mean_p;
  return s;
}

}  // namespace ioncav
