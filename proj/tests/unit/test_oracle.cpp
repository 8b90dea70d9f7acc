#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include <unsupported/Eigen/KroneckerProduct>
#include <ioncav/assembly.hpp>
#include <ioncav/error.hpp>
#include <ioncav/oracle.hpp>

using namespace ioncav;

namespace {

const CouplingParams kWeak = classify_regime(1.0, 0.3, 0.4);

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

struct JointOps {
  Matrix a, b;  // cavity and motion annihilators on the joint space
};

JointOps joint_ops(JointDims d) {
  const Matrix ac = ladder(d.cavity).matrix();
  const Matrix av = ladder(d.vibration).matrix();
  return {kron(ac, Matrix::Identity(d.vibration, d.vibration)),
          kron(Matrix::Identity(d.cavity, d.cavity), av)};
}

// Master equation written out with dense Kronecker products.
Matrix dense_rhs(const CouplingParams& p, JointDims d, const Matrix& rho) {
  const auto [a, b] = joint_ops(d);
  const Complex i{0.0, 1.0};
  const Matrix h = i * p.omega1 * (a.adjoint() * b - a * b.adjoint()) +
                   i * p.omega2 * (a.adjoint() * b.adjoint() - a * b);
  const Matrix n = a.adjoint() * a;
  return -i * (h * rho - rho * h) +
         p.gamma * (a * rho * a.adjoint() - 0.5 * (n * rho + rho * n));
}

Matrix random_density(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix x(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = Complex{g(rng), g(rng)};
  Matrix rho = x * x.adjoint();
  return rho / rho.trace();
}

FockDensity coherent_product(Complex alpha, Complex beta, JointDims d) {
  Vector psi = tensor_ket(coherent_ket(alpha, d.cavity), coherent_ket(beta, d.vibration));
  psi.normalize();
  return pure_density(psi, d);
}

FockDensity vacuum(JointDims d) {
  Vector psi = Vector::Zero(d.total());
  psi(0) = 1.0;
  return pure_density(psi, d);
}

Complex expect(const Matrix& op, const FockDensity& rho) {
  return (op * rho.matrix()).trace() / rho.trace();
}

IntegratorConfig config(double dt, bool halving) {
  IntegratorConfig c;
  c.dt = dt;
  c.halving_check = halving;
  return c;
}

}  // namespace

TEST(Hamiltonian, HermitianWithCouplingElements) {
  const auto p = classify_regime(1.0, 0.6, 0.4);
  const JointDims d{4, 5};
  const Matrix h = effective_hamiltonian(p, d).matrix();
  EXPECT_LT(max_abs(h - h.adjoint()), 1e-15);
  // Cavity-major index c * N_v + v.
  const auto idx = [&](Index c, Index v) { return c * d.vibration + v; };
  EXPECT_NEAR(std::abs(h(idx(1, 0), idx(0, 1)) - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(idx(1, 1), idx(0, 0)) - Complex(0.0, 0.6)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h(idx(0, 0), idx(1, 1)) - Complex(0.0, -0.6)), 0.0, 1e-15);
}

TEST(Generator, MatchesDenseMasterEquation) {
  const JointDims d{5, 6};
  for (const auto& p : {kWeak, classify_regime(1.0, 1.0, 0.4), classify_regime(1.0, 0.6, 0.0),
                        classify_regime(1.0, 1.4, 2.0)}) {
    const Matrix rho = random_density(d.total(), 7);
    const Matrix want = dense_rhs(p, d, rho);
    const LindbladGenerator gen(p, d);
    Matrix got;
    gen.apply(rho, got);
    EXPECT_LT(max_abs(got - want), 1e-12);
    EXPECT_LT(max_abs(lindblad_rhs(p, FockDensity::joint(rho, d)) - want), 1e-12);
    EXPECT_LT(std::abs(got.trace()), 1e-13);
  }
}

TEST(Generator, KetFormIsMinusIH) {
  const auto p = classify_regime(1.0, 0.6, 0.0);
  const JointDims d{4, 4};
  const Matrix h = effective_hamiltonian(p, d).matrix();
  Vector psi = random_density(d.total(), 3).col(0);
  Vector out;
  LindbladGenerator(p, d).apply_ket(psi, out);
  EXPECT_LT((out - Complex(0.0, -1.0) * (h * psi)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Generator, VacuumStationaryWithoutParametricTerm) {
  const auto p = classify_regime(1.0, 0.0, 0.7);
  const JointDims d{4, 4};
  Matrix out;
  LindbladGenerator(p, d).apply(vacuum(d).matrix(), out);
  EXPECT_EQ(max_abs(out), 0.0);
}

TEST(Integrator, ConfigChecks) {
  const JointDims d{10, 10};
  EXPECT_THROW(check_integrator(kWeak, d, config(0.0, false)), InvalidArgument);
  EXPECT_THROW(check_integrator(kWeak, d, config(-1e-3, false)), InvalidArgument);
  EXPECT_THROW(check_integrator(kWeak, d, config(0.02, false)), ConvergenceError);
  EXPECT_NO_THROW(check_integrator(kWeak, d, config(1e-3, false)));
  EXPECT_THROW(evolve(kWeak, vacuum(d), 1.0, config(0.02, false)), ConvergenceError);
  EXPECT_THROW(evolve(kWeak, vacuum(d), -1.0, config(1e-3, false)), InvalidArgument);
}

TEST(Integrator, ZeroTimeIsIdentity) {
  const JointDims d{4, 4};
  const auto rho0 = coherent_product({0.2, 0.1}, {}, d);
  const auto r = evolve(kWeak, rho0, 0.0, config(1e-3, true));
  EXPECT_EQ(max_abs(r.rho.matrix() - rho0.matrix()), 0.0);
  EXPECT_EQ(r.steps, 0);
}

TEST(Integrator, FourthOrderConvergence) {
  const JointDims d{4, 4};
  const auto rho0 = coherent_product({0.3, 0.0}, {0.0, 0.2}, d);
  std::vector<Matrix> ends;
  for (double dt : {0.02, 0.01, 0.005, 0.0025}) {
    ends.push_back(evolve(kWeak, rho0, 1.0, config(dt, false)).rho.matrix());
  }
  const double e1 = max_abs(ends[0] - ends[3]);
  const double e2 = max_abs(ends[1] - ends[3]);
  // Errors against the finest run scale as dt^4 up to the reference's own error.
  const double ratio = e1 / e2;
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(Integrator, HalvingCheckAndTraceDrift) {
  const JointDims d{6, 6};
  const auto rho0 = coherent_product({0.3, 0.0}, {0.0, 0.2}, d);
  const auto r = evolve(kWeak, rho0, 20.0, config(1e-3, true));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.halving_distance, kHalvingTol);
  EXPECT_LT(r.trace_drift, 1e-12);
  EXPECT_EQ(r.steps, 20000 * 2);
  EXPECT_LT(r.rho.hermiticity_error(), 1e-15);
}

TEST(Integrator, MultipleTimesMatchSingleRuns) {
  const JointDims d{5, 5};
  const auto rho0 = coherent_product({0.2, 0.0}, {}, d);
  const std::vector<double> times{0.0, 0.35, 1.0, 2.5};
  const auto runs = evolve_to_times(kWeak, rho0, times, config(5e-3, false));
  ASSERT_EQ(runs.size(), times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_DOUBLE_EQ(runs[i].t, times[i]);
    const auto single = evolve(kWeak, rho0, times[i], config(5e-3, false));
    // Segment boundaries differ, so only the RK4 error level is shared.
    EXPECT_LT(trace_distance(runs[i].rho, single.rho), 1e-8) << times[i];
  }
  EXPECT_THROW(evolve_to_times(kWeak, rho0, {1.0, 0.5}, config(5e-3, false)), InvalidArgument);
}

TEST(Integrator, BeamSplitterLossDrainsExcitations) {
  // Without the parametric term the excitation number only leaks through the cavity:
  // d<n_c + n_v>/dt = -γ <n_c>.
  const auto p = classify_regime(1.0, 0.0, 0.8);
  const JointDims d{4, 4};
  const auto [a, b] = joint_ops(d);
  const Matrix total = a.adjoint() * a + b.adjoint() * b;
  Vector psi = Vector::Zero(d.total());
  psi(1 * d.vibration + 0) = 1.0;
  const auto rho0 = pure_density(psi, d);
  double last = 1.0;
  for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto r = evolve(p, rho0, t, config(2e-3, false));
    const double n = expect(total, r.rho).real();
    EXPECT_LT(n, last) << t;
    last = n;
    Matrix drho;
    LindbladGenerator(p, d).apply(r.rho.matrix(), drho);
    const double dn = (total * drho).trace().real();
    EXPECT_NEAR(dn, -p.gamma * expect(a.adjoint() * a, r.rho).real(), 1e-12) << t;
  }
}

TEST(Oracle, FirstMomentsFollowDisplacement) {
  const JointDims d{12, 12};
  const Complex alpha{0.3, -0.1}, beta{0.0, 0.2};
  const auto [a, b] = joint_ops(d);
  const auto runs =
      evolve_to_times(kWeak, coherent_product(alpha, beta, d), {0.5, 1.5, 3.0}, config(1e-3, false));
  for (const auto& r : runs) {
    const auto want = displacement_trajectory(kWeak, alpha, beta, r.t);
    EXPECT_LT(std::abs(expect(a, r.rho) - want.u), 1e-6) << r.t;
    EXPECT_LT(std::abs(expect(b, r.rho) - want.v), 1e-6) << r.t;
  }
}

TEST(Oracle, AgreesWithAssembledDensity) {
  const JointDims d{15, 15};
  const auto runs = evolve_to_times(kWeak, vacuum(d), {1.0, 2.0}, config(1e-3, false));
  for (const auto& r : runs) {
    AssemblyBudget b;
    b.dims = d;
    const auto s = assemble_joint_density(kWeak, r.t, {}, {}, b);
    EXPECT_LT(trace_distance(s.rho, r.rho), 1e-4) << r.t;
  }
}

TEST(Oracle, LosslessKetMatchesSchroedinger) {
  const auto p = classify_regime(1.0, 0.6, 0.0);
  const JointDims d{20, 20};
  const Complex alpha{0.3, 0.0}, beta{0.0, 0.2};
  Vector psi0 = tensor_ket(coherent_ket(alpha, d.cavity), coherent_ket(beta, d.vibration));
  psi0.normalize();
  const auto r = evolve_pure(p, psi0, d, 1.0, config(1e-3, true));
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.norm_drift, 1e-10);
  const auto k = lossless_ket(p, alpha, beta, 1.0, d);
  const double overlap = std::norm(k.psi.dot(r.psi)) / k.psi.squaredNorm();
  EXPECT_GT(overlap, 1.0 - 1e-6);
}

TEST(Oracle, PureEvolution) {
  const JointDims d{6, 6};
  Vector vac = Vector::Zero(d.total());
  vac(0) = 1.0;
  EXPECT_THROW(evolve_pure(kWeak, vac, d, 1.0, config(1e-3, false)), InvalidArgument);
  const auto bs = classify_regime(1.0, 0.0, 0.0);
  const auto still = evolve_pure(bs, vac, d, 3.0, config(1e-3, false));
  EXPECT_LT((still.psi - vac).cwiseAbs().maxCoeff(), 1e-15);
  // One excitation swaps between the modes with period π/Ω₁ (cos Ω₁t amplitudes).
  Vector one = Vector::Zero(d.total());
  one(1 * d.vibration) = 1.0;
  const auto back = evolve_pure(bs, one, d, 2.0 * M_PI, config(1e-3, true));
  EXPECT_GT(std::norm(one.dot(back.psi)), 1.0 - 1e-10);
  EXPECT_LT(back.norm_drift, 1e-10);
}

TEST(Moments, DriftEntries) {
  const auto p = classify_regime(1.0, 0.6, 0.4);
  const Eigen::Matrix4d a = moment_drift(p);
  Eigen::Matrix4d want;
  want << -0.2, 0, 1.6, 0, 0, -0.2, 0, 0.4, -0.4, 0, 0, 0, 0, -1.6, 0, 0;
  EXPECT_LT((a - want).cwiseAbs().maxCoeff(), 1e-15);
  const auto c = coherent_moments({0.3, -0.2}, {0.1, 0.5});
  EXPECT_NEAR(c.mean(0), 0.3 * M_SQRT2, 1e-15);
  EXPECT_NEAR(c.mean(3), 0.5 * M_SQRT2, 1e-15);
  EXPECT_EQ(c.cov, 0.5 * Eigen::Matrix4d::Identity());
}

TEST(Moments, AgreeWithDenseLindbladAtEqualCoupling) {
  const auto p = classify_regime(1.0, 1.0, 0.4);
  const JointDims d{16, 16};
  const Complex alpha{0.2, 0.0}, beta{0.0, -0.1};
  const double t = 0.5;
  const auto r = evolve(p, coherent_product(alpha, beta, d), t, config(1e-3, false));
  const auto m = evolve_moments(p, coherent_moments(alpha, beta), t);
  const auto [a, b] = joint_ops(d);
  const Complex i{0.0, 1.0};
  const std::array<Matrix, 4> r_ops{(a + a.adjoint()) / M_SQRT2, (a - a.adjoint()) / (i * M_SQRT2),
                                    (b + b.adjoint()) / M_SQRT2, (b - b.adjoint()) / (i * M_SQRT2)};
  for (int k = 0; k < 4; ++k) {
    const double mean = expect(r_ops[k], r.rho).real();
    EXPECT_NEAR(mean, m.mean(k), 1e-6) << k;
    for (int l = 0; l < 4; ++l) {
      const Matrix sym = 0.5 * (r_ops[k] * r_ops[l] + r_ops[l] * r_ops[k]);
      const double cov = expect(sym, r.rho).real() - mean * expect(r_ops[l], r.rho).real();
      EXPECT_NEAR(cov, m.cov(k, l), 1e-5) << k << l;
    }
  }
}

TEST(Moments, EqualCouplingClosedForms) {
  const auto p = classify_regime(1.0, 1.0, 0.4);
  for (double t : {0.5, 1.0, 2.5, 5.0}) {
    const auto m = evolve_moments(p, Moments{}, t);
    const auto want = quad_variances(p, t);
    EXPECT_NEAR(m.cov(0, 0), want.var_xc, 1e-9) << t;
    EXPECT_NEAR(m.cov(1, 1), want.var_pc, 1e-9) << t;
    EXPECT_NEAR(m.cov(2, 2), want.var_xv, 1e-9) << t;
    EXPECT_NEAR(m.cov(3, 3), want.var_pv, 1e-9) << t;
  }
}
