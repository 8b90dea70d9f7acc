#include "ioncav/fock.hpp"

#include <array>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "ioncav/error.hpp"

namespace ioncav {

namespace {

constexpr int kFactorialTable = 1024;

double log_factorial(int n) {
  static const std::array<double, kFactorialTable> table = [] {
    std::array<double, kFactorialTable> t{};
    t[0] = 0.0;
    for (int i = 1; i < kFactorialTable; ++i) {
      t[i] = t[i - 1] + std::log(static_cast<double>(i));
    }
    return t;
  }();
  if (n < kFactorialTable) {
    return table[n];
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

// exp of an anti-Hermitian generator; unitarity is checked, not assumed.
Matrix unitary_exp(const Matrix& generator, const char* what) {
  Matrix u = generator.exp();
  const Index n = u.rows();
  const double err = (u.adjoint() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(err < 1e-8)) {
    throw ConvergenceError(std::string(what) + ": matrix exponential not unitary (error " +
                           std::to_string(err) + ")");
  }
  return u;
}

void require_dim(Index N, const char* what) {
  if (N < 2) {
    throw InvalidArgument(std::string(what) + ": truncation dimension must be >= 2, got " +
                          std::to_string(N));
  }
}

}  // namespace

FockOperator::FockOperator(Matrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) {
    throw InvalidArgument("FockOperator requires a square matrix");
  }
}

FockOperator FockOperator::leading(Index n) const {
  if (n < 0 || n > dim()) {
    throw InvalidArgument("leading block larger than the operator");
  }
  return FockOperator(m_.topLeftCorner(n, n));
}

FockDensity FockDensity::single(Matrix rho) {
  FockDensity d;
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw InvalidArgument("density matrix must be square and non-empty");
  }
  d.m_ = std::move(rho);
  d.dims_ = {d.m_.rows(), d.m_.rows()};
  d.joint_ = false;
  if (d.hermiticity_error() > kHermitianTol) {
    throw InvalidArgument("density matrix is not Hermitian (error " +
                          std::to_string(d.hermiticity_error()) + ")");
  }
  return d;
}

FockDensity FockDensity::joint(Matrix rho, JointDims dims) {
  if (rho.rows() != rho.cols() || rho.rows() != dims.total() || dims.cavity < 1 ||
      dims.vibration < 1) {
    throw InvalidArgument("joint density dimension does not match cavity x vibration dims");
  }
  FockDensity d = single(std::move(rho));
  d.dims_ = dims;
  d.joint_ = true;
  return d;
}

double FockDensity::hermiticity_error() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double FockDensity::min_eigenvalue() const {
  const Matrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

FockOperator ladder(Index N) {
  require_dim(N, "ladder");
  Matrix a = Matrix::Zero(N, N);
  for (Index n = 1; n < N; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return FockOperator(std::move(a));
}

FockOperator displacement_op(Complex alpha, Index N) {
  require_dim(N, "displacement_op");
  const double r = std::abs(alpha);
  if (r * r + 4.0 * r >= static_cast<double>(N)) {
    warn("displacement_op: |alpha|^2 + 4|alpha| = " + std::to_string(r * r + 4.0 * r) +
         " does not fit in N = " + std::to_string(N) + " levels");
  }
  if (alpha == Complex{}) {
    return FockOperator(Matrix::Identity(N, N));
  }
  const Matrix a = ladder(N).matrix();
  const Matrix generator = alpha * a.adjoint() - std::conj(alpha) * a;
  return FockOperator(unitary_exp(generator, "displacement_op"));
}

FockOperator squeeze_op(double xi, Index N) {
  require_dim(N, "squeeze_op");
  if (std::exp(2.0 * std::abs(xi)) > static_cast<double>(N) / 4.0) {
    warn("squeeze_op: e^{2|xi|} = " + std::to_string(std::exp(2.0 * std::abs(xi))) +
         " is not small against N = " + std::to_string(N));
  }
  if (xi == 0.0) {
    return FockOperator(Matrix::Identity(N, N));
  }
  const Matrix a = ladder(N).matrix();
  const Matrix a2 = a * a;
  const Matrix generator = (0.5 * xi) * (a2 - a2.adjoint());
  return FockOperator(unitary_exp(generator, "squeeze_op"));
}

FockDensity thermal_state(double n_bar, Index N) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw InvalidArgument("thermal_state: n_bar must be finite and >= 0");
  }
  if (N < 1) {
    throw InvalidArgument("thermal_state: N must be >= 1");
  }
  Matrix rho = Matrix::Zero(N, N);
  const double ratio = n_bar / (n_bar + 1.0);
  double p = 1.0 / (n_bar + 1.0);
  for (Index k = 0; k < N; ++k) {
    rho(k, k) = p;
    p *= ratio;
  }
  return FockDensity::single(std::move(rho));
}

double thermal_trace_deficit(double n_bar, Index N) {
  if (n_bar == 0.0) {
    return 0.0;
  }
  return std::pow(n_bar / (n_bar + 1.0), static_cast<double>(N));
}

Vector coherent_ket(Complex alpha, Index N) {
  if (N < 1) {
    throw InvalidArgument("coherent_ket: N must be >= 1");
  }
  Vector psi(N);
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  for (Index n = 0; n < N; ++n) {
    psi(n) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return psi;
}

Vector resize_ket(const Vector& psi, Index N) {
  Vector out = Vector::Zero(N);
  const Index keep = std::min(N, psi.size());
  out.head(keep) = psi.head(keep);
  return out;
}

Vector tensor_ket(const Vector& cavity, const Vector& vibration) {
  Vector out(cavity.size() * vibration.size());
  for (Index c = 0; c < cavity.size(); ++c) {
    out.segment(c * vibration.size(), vibration.size()) = cavity(c) * vibration;
  }
  return out;
}

FockDensity pure_density(const Vector& psi) {
  return FockDensity::single(psi * psi.adjoint());
}

FockDensity pure_density(const Vector& psi, JointDims dims) {
  return FockDensity::joint(psi * psi.adjoint(), dims);
}

FockDensity tensor_product(const FockDensity& cavity, const FockDensity& vibration) {
  const Matrix& a = cavity.matrix();
  const Matrix& b = vibration.matrix();
  const Index nv = b.rows();
  Matrix out(a.rows() * nv, a.cols() * nv);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * nv, j * nv, nv, nv) = a(i, j) * b;
    }
  }
  return FockDensity::joint(std::move(out), {a.rows(), nv});
}

double jacobi_poly(int m, int k, int l, double x) {
  if (m < 0 || k < 0 || l > k) {
    throw InvalidArgument("jacobi_poly: need m, k >= 0 and l <= k");
  }
  if (!(x >= 0.0) || !(x < 1.0)) {
    throw InvalidArgument("jacobi_poly: x must lie in [0, 1)");
  }
  double sum = 0.0;
  for (int j = std::max(0, l); j <= k; ++j) {
    const double log_mag =
        log_factorial(j + m) - log_factorial(j - l) - log_factorial(k - j) - log_factorial(j);
    const double term = std::exp(log_mag) * std::pow(x, j);
    sum += ((j - l) % 2 == 0) ? term : -term;
  }
  return sum;
}

FockOperator r_operator(int m, int n, double n_bar, Index N) {
  if (m < 0 || n < 0) {
    throw InvalidArgument("r_operator: indices must be >= 0");
  }
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw InvalidArgument("r_operator: n_bar must be finite and >= 0");
  }
  if (N < 1) {
    throw InvalidArgument("r_operator: N must be >= 1");
  }
  if (m < n) {
    return r_operator(n, m, n_bar, N).adjoint();
  }
  Matrix r = Matrix::Zero(N, N);
  const double x = n_bar / (n_bar + 1.0);
  const double log_scale = -(m + 1) * std::log1p(n_bar);
  const int shift = m - n;
  for (Index k = 0; k + shift < N; ++k) {
    const int ki = static_cast<int>(k);
    const double log_norm =
        0.5 * (log_factorial(n) + log_factorial(ki) - log_factorial(m) - log_factorial(ki + shift));
    r(k + shift, k) = std::exp(log_norm + log_scale) * jacobi_poly(m, ki, ki - n, x);
  }
  return FockOperator(std::move(r));
}

FockOperator raise_superop(const FockOperator& op, int m, int n) {
  if (m < 0 || n < 0) {
    throw InvalidArgument("raise_superop: indices must be >= 0");
  }
  const Index N = op.dim();
  if (m + n >= N) {
    throw InvalidArgument("raise_superop: m + n = " + std::to_string(m + n) +
                          " leaves no headroom in N = " + std::to_string(N) + " levels");
  }
  if (m == 0 && n == 0) {
    return op;
  }
  const Matrix a = ladder(N).matrix();
  const Matrix ad = a.adjoint();
  Matrix x = op.matrix();
  for (int i = 0; i < m; ++i) {
    x = (ad * x - x * ad).eval();
  }
  for (int i = 0; i < n; ++i) {
    x = (x * a - a * x).eval();
  }
  x *= std::exp(-0.5 * (log_factorial(m) + log_factorial(n)));
  return FockOperator(x.topLeftCorner(N - m - n, N - m - n));
}

double c_coefficient(int m, int n, int k, double xi) {
  if (m < 0 || n < 0 || k < 0 || k > m + n) {
    throw InvalidArgument("c_coefficient: need m, n >= 0 and 0 <= k <= m + n");
  }
  const double ch = std::cosh(xi);
  const double sh = std::sinh(xi);
  double sum = 0.0;
  for (int l = std::max(0, k - m); l <= std::min(n, k); ++l) {
    const double binoms = std::exp(log_factorial(m) - log_factorial(k - l) -
                                   log_factorial(m - k + l) + log_factorial(n) -
                                   log_factorial(l) - log_factorial(n - l));
    sum += binoms * std::pow(ch, m - k + 2 * l) * std::pow(sh, n + k - 2 * l);
  }
  const double prefactor = std::exp(
      0.5 * (log_factorial(m + n - k) + log_factorial(k) - log_factorial(m) - log_factorial(n)));
  return prefactor * sum;
}

FockOperator q_operator(int m, int n, double n_bar, double xi, Index N) {
  if (m < 0 || n < 0) {
    throw InvalidArgument("q_operator: indices must be >= 0");
  }
  require_dim(N, "q_operator");
  Matrix inner = Matrix::Zero(N, N);
  for (int k = 0; k <= m + n; ++k) {
    const double c = c_coefficient(m, n, k, xi);
    if (c != 0.0) {
      inner += c * r_operator(m + n - k, k, n_bar, N).matrix();
    }
  }
  if (xi == 0.0) {
    return FockOperator(std::move(inner));
  }
  const Matrix s = squeeze_op(xi, N).matrix();
  return FockOperator(s * inner * s.adjoint());
}

}  // namespace ioncav
