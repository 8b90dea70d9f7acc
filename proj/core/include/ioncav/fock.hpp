#pragma once

#include <Eigen/Dense>

#include "ioncav/params.hpp"

namespace ioncav {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Truncation sizes of the joint space; the cavity index is major, so
/// |c, v⟩ sits at position c·vibration + v.
struct JointDims {
  Index cavity = 0;
  Index vibration = 0;

  Index total() const noexcept { return cavity * vibration; }
  Index of(Mode mode) const noexcept { return mode == Mode::Cavity ? cavity : vibration; }
  friend bool operator==(const JointDims&, const JointDims&) = default;
};

/// Dense operator on a truncated single-mode Fock space |0⟩..|N−1⟩.
/// Entry (r, c) is ⟨r|Ô|c⟩.
class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(Matrix entries);

  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  Matrix& matrix() noexcept { return m_; }

  FockOperator adjoint() const { return FockOperator(m_.adjoint()); }

  /// Leading n×n block.
  FockOperator leading(Index n) const;

 private:
  Matrix m_;
};

/// Density matrix on one mode or on the joint cavity ⊗ motion space.
class FockDensity {
 public:
  FockDensity() = default;

  static FockDensity single(Matrix rho);
  static FockDensity joint(Matrix rho, JointDims dims);

  bool is_joint() const noexcept { return joint_; }
  /// For a single-mode density both entries equal dim().
  JointDims dims() const noexcept { return dims_; }
  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

  double trace() const { return m_.trace().real(); }
  /// max |ρ − ρ†|
  double hermiticity_error() const;
  double min_eigenvalue() const;

 private:
  Matrix m_;
  JointDims dims_;
  bool joint_ = false;
};

/// Hermiticity bound enforced on every FockDensity.
inline constexpr double kHermitianTol = 1e-10;
/// Smallest eigenvalue accepted as PSD; truncation produces tiny negatives.
inline constexpr double kPsdTol = 1e-8;

// --- single-mode constructors ------------------------------------------

/// Annihilation operator: ⟨n−1|a|n⟩ = √n. Requires N >= 2.
FockOperator ladder(Index N);

/// D(α) = exp(α a† − α* a) on the truncated ladder. Warns when
/// |α|² + 4|α| >= N, where the truncated generator is no longer faithful.
/// Both exponentials throw ConvergenceError if the result is not unitary
/// to 1e−8.
FockOperator displacement_op(Complex alpha, Index N);

/// S(ξ) = exp(ξ/2 (a² − a†²)) for real ξ. Warns when e^{2|ξ|} is not
/// small compared with N.
FockOperator squeeze_op(double xi, Index N);

/// diag(n̄^k/(n̄+1)^{k+1}), k < N.
FockDensity thermal_state(double n_bar, Index N);

/// Weight of the thermal distribution beyond level N−1: (n̄/(n̄+1))^N.
double thermal_trace_deficit(double n_bar, Index N);

/// D(α)|0⟩ for amplitude alpha, from the closed-form Poisson amplitudes.
Vector coherent_ket(Complex alpha, Index N);

/// Embeds a ket given in N levels into the first levels of a larger space
/// or crops it.
Vector resize_ket(const Vector& psi, Index N);

/// ψ ⊗ φ with the cavity factor first.
Vector tensor_ket(const Vector& cavity, const Vector& vibration);

/// |ψ⟩⟨ψ| as a single-mode density.
FockDensity pure_density(const Vector& psi);

/// |ψ⟩⟨ψ| on the joint space.
FockDensity pure_density(const Vector& psi, JointDims dims);

/// ρ_c ⊗ ρ_v.
FockDensity tensor_product(const FockDensity& cavity, const FockDensity& vibration);

// --- operator families of the analytical solution -----------------------

/// P_m^{k,l}(x) = Σ_{j=max(0,l)}^{k} (−1)^{j−l} (j+m)! / ((j−l)!(k−j)!) x^j/j!,
/// summed with log-factorials and explicit sign tracking.
/// Requires m, k >= 0, l <= k and 0 <= x < 1.
double jacobi_poly(int m, int k, int l, double x);

/// R^{m,n}(n̄) truncated to N levels. For m >= n the entries are
///   ⟨k+m−n| R |k⟩ = √(n! k! / (m! (k+m−n)!)) (n̄+1)^{−(m+1)} P_m^{k,k−n}(n̄/(n̄+1))
/// and R^{n,m} = (R^{m,n})†. R^{0,0} is the thermal state.
FockOperator r_operator(int m, int n, double n_bar, Index N);

/// Applies (N₊)^n/√n! (M₊)^m/√m! to op, where M₊X = a†X − Xa† and
/// N₊X = Xa − aX. Each application spoils the outermost level of the
/// truncated space, so the result is returned on the leading N − m − n
/// levels, where it is exact. Throws InvalidArgument when m + n >= N.
FockOperator raise_superop(const FockOperator& op, int m, int n);

/// C_k^{m,n}(ξ), the weight of S R^{m+n−k,k} S† in Q^{m,n}. 0 <= k <= m+n.
double c_coefficient(int m, int n, int k, double xi);

/// Q^{m,n}(n̄, ξ) = Σ_k C_k^{m,n}(ξ) S(ξ) R^{m+n−k,k}(n̄) S(ξ)†.
FockOperator q_operator(int m, int n, double n_bar, double xi, Index N);

// --- reductions and metrics --------------------------------------------

/// Traces out the mode that is not kept.
FockDensity partial_trace(const FockDensity& joint, Mode keep);

struct StateMetrics {
  /// (tr √(√ρ σ √ρ))² / (tr ρ tr σ): states are trace-normalised first, so
  /// truncated states compare by shape and the deficit shows up in the
  /// trace distance instead.
  double fidelity;
  double trace_distance;  ///< ½ Σ |eig(ρ − σ)|
  double purity;          ///< tr ρ² of the first argument
};

/// Throws InvalidArgument for mismatched dimensions or when either input
/// has an eigenvalue below −kPsdTol.
StateMetrics state_metrics(const FockDensity& rho, const FockDensity& sigma);

double fidelity(const FockDensity& rho, const FockDensity& sigma);
double trace_distance(const FockDensity& rho, const FockDensity& sigma);
double purity(const FockDensity& rho);

/// ⟨ψ|ρ|ψ⟩ / (⟨ψ|ψ⟩ tr ρ), the fidelity with a pure reference.
double fidelity_with_pure(const FockDensity& rho, const Vector& psi);

/// Quadrature means and variances of a single mode.
struct ModeQuadStats {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double var_x = 0.5;
  double var_p = 0.5;
};

ModeQuadStats quad_stats(const FockDensity& single_mode);

}  // namespace ioncav
