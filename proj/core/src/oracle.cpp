#include "ioncav/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>


#include "ioncav/error.hpp"
#include "ioncav/rk4.hpp"

namespace ioncav {

namespace {

void require_joint_dims(JointDims dims) {
  if (dims.cavity < 2 || dims.vibration < 2) {
    throw InvalidArgument("joint dims must be >= 2 per mode");
  }
}

long step_count(double span, double dt) {
  if (span <= 0.0) {
    return 0;
  }
  // Tolerate spans that are a whole number of steps up to rounding.
  return static_cast<long>(std::ceil(span / dt - 1e-9));
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double pure_distance(const Vector& a, const Vector& b) {
  const double overlap = std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

struct DensityRun {
  std::vector<Matrix> states;
  double drift = 0.0;
  long steps = 0;
};

DensityRun run_density(const LindbladGenerator& gen, const Matrix& rho0,
                       const std::vector<double>& times, double dt) {
  DensityRun run;
  Matrix rho = rho0;
  const double tr0 = rho0.trace().real();
  Rk4<Matrix> rk(rho0);
  auto rhs = [&gen](const Matrix& y, Matrix& out) { gen.apply(y, out); };

  double t = 0.0;
  for (double target : times) {
    const long n = step_count(target - t, dt);
    const double h = n > 0 ? (target - t) / static_cast<double>(n) : 0.0;
    for (long i = 0; i < n; ++i) {
      rk.step(rho, h, rhs);
      const double drift = std::abs(rho.trace().real() - tr0);
      run.drift = std::max(run.drift, drift);
      if (drift > kTraceDriftTol) {
        throw ConvergenceError("trace drift " + std::to_string(drift) + " at t = " +
                               std::to_string(t + (i + 1) * h) + " exceeds 1e-8");
      }
    }
    run.steps += n;
    t = target;
    run.states.push_back(hermitian_part(rho));
  }
  return run;
}

struct PureRun {
  std::vector<Vector> states;
  double drift = 0.0;
};

PureRun run_pure(const LindbladGenerator& gen, const Vector& psi0,
                 const std::vector<double>& times, double dt) {
  PureRun run;
  Vector psi = psi0;
  const double norm0 = psi0.norm();
  Rk4<Vector> rk(psi0);
  auto rhs = [&gen](const Vector& y, Vector& out) { gen.apply_ket(y, out); };

  double t = 0.0;
  for (double target : times) {
    const long n = step_count(target - t, dt);
    const double h = n > 0 ? (target - t) / static_cast<double>(n) : 0.0;
    for (long i = 0; i < n; ++i) {
      rk.step(psi, h, rhs);
    }
    run.drift = std::max(run.drift, std::abs(psi.norm() - norm0));
    t = target;
    run.states.push_back(psi * (norm0 / psi.norm()));
  }
  return run;
}

void require_times(const std::vector<double>& times) {
  double prev = 0.0;
  for (double t : times) {
    if (!std::isfinite(t) || t < prev) {
      throw InvalidArgument("evolution times must be finite, >= 0 and ascending");
    }
    prev = t;
  }
}

}  // namespace

void check_integrator(const CouplingParams& params, JointDims dims,
                      const IntegratorConfig& config) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
    throw InvalidArgument("integrator dt must be > 0");
  }
  if (!(config.t_max >= 0.0)) {
    throw InvalidArgument("integrator t_max must be >= 0");
  }
  const double rate = std::max({params.omega1, params.omega2, params.gamma});
  const double n = static_cast<double>(std::max(dims.cavity, dims.vibration));
  const double load = config.dt * rate * n;
  if (!(load < kStabilityLimit)) {
    throw ConvergenceError("dt*max(rate)*max(N) = " + std::to_string(load) +
                           " violates the stability limit 0.1");
  }
}

FockOperator effective_hamiltonian(const CouplingParams& params, JointDims dims) {
  require_joint_dims(dims);
  const Matrix a = ladder(dims.cavity).matrix();
  const Matrix b = ladder(dims.vibration).matrix();
  const Matrix ic = Matrix::Identity(dims.cavity, dims.cavity);
  const Matrix iv = Matrix::Identity(dims.vibration, dims.vibration);

  auto kron = [](const Matrix& x, const Matrix& y) {
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Index i = 0; i < x.rows(); ++i) {
      for (Index j = 0; j < x.cols(); ++j) {
        out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
      }
    }
    return out;
  };
  const Matrix A = kron(a, iv);
  const Matrix B = kron(ic, b);
  const Complex i{0.0, 1.0};
  Matrix h = i * params.omega1 * (A.adjoint() * B - A * B.adjoint()) +
             i * params.omega2 * (A.adjoint() * B.adjoint() - A * B);
  return FockOperator(std::move(h));
}

LindbladGenerator::LindbladGenerator(const CouplingParams& params, JointDims dims)
    : dims_(dims), omega1_(params.omega1), omega2_(params.omega2), gamma_(params.gamma) {
  require_joint_dims(dims);
  shift_.resize(2 * std::max<Index>(dims.vibration - 1, 0));
  for (Index v = 0; 2 * v < shift_.size(); ++v) {
    shift_(2 * v) = shift_(2 * v + 1) = std::sqrt(static_cast<double>(v + 1));
  }
}

namespace {

using RealBlock = Eigen::Map<Eigen::MatrixXd, 0, Eigen::OuterStride<>>;
using ConstRealBlock = Eigen::Map<const Eigen::MatrixXd, 0, Eigen::OuterStride<>>;

// Rows [first, first + n) of a complex matrix, viewed as 2n real rows.
ConstRealBlock real_rows(const Eigen::Ref<const Matrix>& x, Index first, Index n) {
  return {reinterpret_cast<const double*>(x.data() + first), 2 * n, x.cols(),
          Eigen::OuterStride<>(2 * x.outerStride())};
}

RealBlock real_rows(Eigen::Ref<Matrix>& y, Index first, Index n) {
  return {reinterpret_cast<double*>(y.data() + first), 2 * n, y.cols(),
          Eigen::OuterStride<>(2 * y.outerStride())};
}

}  // namespace

// y = G x, block by cavity level. With X_c the rows of cavity level c,
//   (G x)_c = √c (Ω₁ b + Ω₂ b†) X_{c−1} − √(c+1) (Ω₁ b† + Ω₂ b) X_{c+1} − (γ/2) c X_c.
// G is real, so real and imaginary parts are shifted alike.
void LindbladGenerator::apply_g(Eigen::Ref<const Matrix> x, Eigen::Ref<Matrix> y) const {
  const Index nc = dims_.cavity;
  const Index nv = dims_.vibration;
  const Index m = 2 * (nv - 1);
  for (Index c = 0; c < nc; ++c) {
    auto dst = real_rows(y, c * nv, nv);
    if (gamma_ != 0.0 && c > 0) {
      dst = (-0.5 * gamma_ * static_cast<double>(c)) * real_rows(x, c * nv, nv);
    } else {
      dst.setZero();
    }
    if (m == 0) continue;
    if (c > 0) {
      const auto src = real_rows(x, (c - 1) * nv, nv);
      const double w = std::sqrt(static_cast<double>(c));
      dst.topRows(m).array() += (w * omega1_) * (src.bottomRows(m).array().colwise() * shift_);
      dst.bottomRows(m).array() += (w * omega2_) * (src.topRows(m).array().colwise() * shift_);
    }
    if (c + 1 < nc) {
      const auto src = real_rows(x, (c + 1) * nv, nv);
      const double w = std::sqrt(static_cast<double>(c + 1));
      dst.bottomRows(m).array() -= (w * omega1_) * (src.topRows(m).array().colwise() * shift_);
      dst.topRows(m).array() -= (w * omega2_) * (src.bottomRows(m).array().colwise() * shift_);
    }
  }
}

void LindbladGenerator::apply(const Matrix& rho, Matrix& out) const {
  const Index total = dims_.total();
  if (rho.rows() != total || rho.cols() != total) {
    throw InvalidArgument("density dimension does not match the generator");
  }
  scratch_.resize(total, total);
  apply_g(rho, scratch_);
  out = scratch_ + scratch_.adjoint();

  if (gamma_ != 0.0) {
    const Index nv = dims_.vibration;
    const Index nc = dims_.cavity;
    for (Index cj = 0; cj + 1 < nc; ++cj) {
      for (Index ci = 0; ci + 1 < nc; ++ci) {
        const double w = gamma_ * std::sqrt(static_cast<double>((ci + 1) * (cj + 1)));
        out.block(ci * nv, cj * nv, nv, nv) += w * rho.block((ci + 1) * nv, (cj + 1) * nv, nv, nv);
      }
    }
  }
}

void LindbladGenerator::apply_ket(const Vector& psi, Vector& out) const {
  const Index total = dims_.total();
  if (psi.size() != total) {
    throw InvalidArgument("ket dimension does not match the generator");
  }
  out.resize(total);
  apply_g(Eigen::Map<const Matrix>(psi.data(), total, 1), Eigen::Map<Matrix>(out.data(), total, 1));
}

Matrix lindblad_rhs(const CouplingParams& params, const FockDensity& rho) {
  if (!rho.is_joint()) {
    throw InvalidArgument("lindblad_rhs needs a joint density");
  }
  const LindbladGenerator gen(params, rho.dims());
  Matrix out;
  gen.apply(rho.matrix(), out);
  return out;
}

std::vector<EvolveResult> evolve_to_times(const CouplingParams& params, const FockDensity& rho0,
                                          const std::vector<double>& times,
                                          const IntegratorConfig& config) {
  if (!rho0.is_joint()) {
    throw InvalidArgument("evolve needs a joint density");
  }
  require_times(times);
  check_integrator(params, rho0.dims(), config);
  const LindbladGenerator gen(params, rho0.dims());

  const DensityRun coarse = run_density(gen, rho0.matrix(), times, config.dt);
  DensityRun fine;
  if (config.halving_check) {
    fine = run_density(gen, rho0.matrix(), times, 0.5 * config.dt);
  }

  std::vector<EvolveResult> out;
  out.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    EvolveResult r;
    r.t = times[k];
    if (config.halving_check) {
      const FockDensity a = FockDensity::joint(coarse.states[k], rho0.dims());
      r.rho = FockDensity::joint(fine.states[k], rho0.dims());
      r.halving_distance = trace_distance(a, r.rho);
      r.converged = r.halving_distance < kHalvingTol;
      r.trace_drift = std::max(coarse.drift, fine.drift);
      r.steps = fine.steps;
    } else {
      r.rho = FockDensity::joint(coarse.states[k], rho0.dims());
      r.trace_drift = coarse.drift;
      r.steps = coarse.steps;
    }
    out.push_back(std::move(r));
  }
  return out;
}

EvolveResult evolve(const CouplingParams& params, const FockDensity& rho0, double t_target,
                    const IntegratorConfig& config) {
  if (!(t_target >= 0.0)) {
    throw InvalidArgument("t_target must be >= 0");
  }
  return evolve_to_times(params, rho0, {t_target}, config).front();
}

PureEvolveResult evolve_pure(const CouplingParams& params, const Vector& psi0, JointDims dims,
                             double t_target, const IntegratorConfig& config) {
  if (params.gamma != 0.0) {
    throw InvalidArgument("evolve_pure requires gamma = 0");
  }
  require_joint_dims(dims);
  if (psi0.size() != dims.total()) {
    throw InvalidArgument("ket dimension does not match dims");
  }
  if (!(t_target >= 0.0) || !std::isfinite(t_target)) {
    throw InvalidArgument("t_target must be finite and >= 0");
  }
  check_integrator(params, dims, config);
  const LindbladGenerator gen(params, dims);

  const PureRun coarse = run_pure(gen, psi0, {t_target}, config.dt);
  PureEvolveResult r;
  r.t = t_target;
  r.dims = dims;
  if (config.halving_check) {
    PureRun fine = run_pure(gen, psi0, {t_target}, 0.5 * config.dt);
    r.halving_distance = pure_distance(coarse.states.front(), fine.states.front());
    r.converged = r.halving_distance < kHalvingTol;
    r.norm_drift = std::max(coarse.drift, fine.drift);
    r.psi = std::move(fine.states.front());
  } else {
    r.norm_drift = coarse.drift;
    r.psi = coarse.states.front();
  }
  return r;
}

Moments coherent_moments(Complex alpha, Complex beta) {
  Moments m;
  const double s = std::sqrt(2.0);
  m.mean << s * alpha.real(), s * alpha.imag(), s * beta.real(), s * beta.imag();
  return m;
}

Eigen::Matrix4d moment_drift(const CouplingParams& params) {
  const double o1 = params.omega1;
  const double o2 = params.omega2;
  const double k = 0.5 * params.gamma;
  Eigen::Matrix4d a;
  // clang-format off
  a << -k,          0.0,        o1 + o2, 0.0,
       0.0,         -k,         0.0,     o1 - o2,
       -(o1 - o2),  0.0,        0.0,     0.0,
       0.0,         -(o1 + o2), 0.0,     0.0;
  // clang-format on
  return a;
}

Moments evolve_moments(const CouplingParams& params, const Moments& m0, double t, double dt) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("t must be finite and >= 0");
  }
  if (!(dt > 0.0)) {
    throw InvalidArgument("dt must be > 0");
  }
  const Eigen::Matrix4d a = moment_drift(params);
  Eigen::Matrix4d noise = Eigen::Matrix4d::Zero();
  noise(0, 0) = noise(1, 1) = 0.5 * params.gamma;

  Moments m = m0;
  const long n = step_count(t, dt);
  if (n == 0) {
    return m;
  }
  const double h = t / static_cast<double>(n);

  Rk4<Eigen::Vector4d> mean_rk(m.mean);
  mean_rk.advance(m.mean, h, static_cast<std::size_t>(n),
                  [&a](const Eigen::Vector4d& y, Eigen::Vector4d& out) { out = a * y; });
  Rk4<Eigen::Matrix4d> cov_rk(m.cov);
  cov_rk.advance(m.cov, h, static_cast<std::size_t>(n),
                 [&a, &noise](const Eigen::Matrix4d& y, Eigen::Matrix4d& out) {
                   out = a * y + y * a.transpose() + noise;
                 });
  return m;
}

}  // namespace ioncav
