#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ioncav/fock.hpp"

namespace ioncav {

/// Fixed-step RK4 settings for the brute-force integrators.
struct IntegratorConfig {
  double dt = 1e-3;
  double t_max = 25.0;
  /// Re-run at dt/2 and compare the end states.
  bool halving_check = true;
};

/// Agreement required between the dt and dt/2 runs.
inline constexpr double kHalvingTol = 1e-6;
/// Largest tolerated |tr ρ(t) − tr ρ(0)| along a trajectory.
inline constexpr double kTraceDriftTol = 1e-8;
/// dt·max(Ω₁, Ω₂, γ)·max(N_c, N_v) must stay below this.
inline constexpr double kStabilityLimit = 0.1;

/// Throws InvalidArgument for dt <= 0 or t_max < 0 and ConvergenceError
/// when the step violates the stability heuristic for these dims.
void check_integrator(const CouplingParams& params, JointDims dims, const IntegratorConfig& config);

/// V = iΩ₁(a†b − ab†) + iΩ₂(a†b† − ab) on the joint space.
FockOperator effective_hamiltonian(const CouplingParams& params, JointDims dims);

/// Matrix-free master equation generator on a fixed joint space.
/// With G = −iH − (γ/2) a†a ⊗ 1 (a real matrix),
///   dρ/dt = Gρ + (Gρ)† + γ (a ⊗ 1) ρ (a ⊗ 1)†,
/// which holds for Hermitian ρ.
class LindbladGenerator {
 public:
  LindbladGenerator(const CouplingParams& params, JointDims dims);

  JointDims dims() const noexcept { return dims_; }

  /// out = dρ/dt. rho must be Hermitian; out is resized as needed.
  void apply(const Matrix& rho, Matrix& out) const;
  /// out = −iHψ. Only meaningful without loss.
  void apply_ket(const Vector& psi, Vector& out) const;

 private:
  void apply_g(Eigen::Ref<const Matrix> x, Eigen::Ref<Matrix> y) const;

  JointDims dims_;
  double omega1_;
  double omega2_;
  double gamma_;
  Eigen::ArrayXd shift_;  ///< √(v+1) for v = 0 .. N_v − 2, each twice (re, im)
  mutable Matrix scratch_;
};

/// −i[H, ρ] + (γ/2)(2aρa† − a†aρ − ρa†a) with a on the cavity factor.
Matrix lindblad_rhs(const CouplingParams& params, const FockDensity& rho);

struct EvolveResult {
  double t = 0.0;
  FockDensity rho;
  /// False when the dt/2 rerun disagrees by kHalvingTol or more.
  bool converged = true;
  /// Trace distance between the dt and dt/2 end states; 0 without a check.
  double halving_distance = 0.0;
  double trace_drift = 0.0;
  long steps = 0;
};

/// Integrates from 0 to t_target; the dt/2 end state is returned when the
/// halving check runs. Throws ConvergenceError on trace drift above
/// kTraceDriftTol.
EvolveResult evolve(const CouplingParams& params, const FockDensity& rho0, double t_target,
                    const IntegratorConfig& config);

/// One pass over ascending times; each segment uses ceil(Δt/dt) equal steps.
std::vector<EvolveResult> evolve_to_times(const CouplingParams& params, const FockDensity& rho0,
                                          const std::vector<double>& times,
                                          const IntegratorConfig& config);

struct PureEvolveResult {
  double t = 0.0;
  Vector psi;
  JointDims dims;
  /// max |‖ψ‖ − 1| seen before the final renormalisation.
  double norm_drift = 0.0;
  bool converged = true;
  double halving_distance = 0.0;
};

/// Schrödinger evolution ∂ψ/∂t = −iHψ. Rejects γ != 0.
PureEvolveResult evolve_pure(const CouplingParams& params, const Vector& psi0, JointDims dims,
                             double t_target, const IntegratorConfig& config);

// --- Gaussian moments ----------------------------------------------------

/// Quadrature means and covariance for r = (X_c, P_c, X_v, P_v) with
/// X = (a + a†)/√2, P = (a − a†)/(i√2); cov_ij = ½⟨{Δr_i, Δr_j}⟩.
struct Moments {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = 0.5 * Eigen::Matrix4d::Identity();
};

/// Product of coherent states |α⟩|β⟩.
Moments coherent_moments(Complex alpha, Complex beta);

/// Drift matrix A of dr/dt = A r.
Eigen::Matrix4d moment_drift(const CouplingParams& params);

/// RK4 on d⟨r⟩/dt = A⟨r⟩ and dV/dt = AV + VAᵀ + diag(γ/2, γ/2, 0, 0).
/// These equations are exact for the quadratic model, with no truncation.
Moments evolve_moments(const CouplingParams& params, const Moments& m0, double t,
                       double dt = 1e-3);

}  // namespace ioncav
