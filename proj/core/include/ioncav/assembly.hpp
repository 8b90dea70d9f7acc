#pragma once

#include "ioncav/fock.hpp"
#include "ioncav/observables.hpp"

namespace ioncav {

/// Truncation controls for building the analytical density operator.
struct AssemblyBudget {
  /// Largest m + n kept in the double sum; negative selects the smallest
  /// M with |ζ|^{M+1}/(1 − |ζ|) < series_tol.
  int mn_cutoff = -1;
  double series_tol = 1e-12;
  JointDims dims{15, 15};
  /// Extra levels used while building single-mode factors; they are
  /// cropped before the result is returned.
  Index padding = 10;
};

/// Hard cap on m + n; the log-factorial sums are only used below this.
inline constexpr int kMaxSeriesOrder = 60;

struct AssembledState {
  FockDensity rho;
  int mn_cutoff = 0;
  double tail_bound = 0.0;     ///< |ζ|^{M+1}/(1 − |ζ|)
  double trace_deficit = 0.0;  ///< |1 − tr ρ| after cropping
};

/// Smallest admissible series order for joint weight zeta. Throws
/// BudgetError when |zeta| >= 1 or the order would exceed kMaxSeriesOrder.
int default_mn_cutoff(double zeta, double series_tol);

/// Σ_{m+n<=M} (f g)^{m+n} Q_c^{m,n}(n̄_c, ξ_c) ⊗ Q_v^{m,n}(n̄_v, ξ_v),
/// conjugated by D_c(u) ⊗ D_v(v) for a coherent start (α, β).
///
/// Throws RegimeError at equal coupling and BudgetError when the series
/// tail cannot be bounded below series_tol within the budget.
AssembledState assemble_joint_density(const CouplingParams& params, double t, Complex alpha,
                                      Complex beta, const AssemblyBudget& budget);

/// D(w) S(ξ) thermal(n̄) S(ξ)† D(w)† for one mode, w = u or v. At equal
/// coupling the motion's (n̄, ξ) follow from the closed-form variances.
FockDensity reduced_density(const CouplingParams& params, double t, Mode mode, Complex alpha,
                            Complex beta, Index N, Index padding = 10);

/// Single-mode ket S(ξ)|0⟩ built with padding and cropped to N levels.
Vector squeezed_vacuum_ket(double xi, Index N, Index padding = 10);

/// Fock truncation large enough for squeezed-thermal tails below ~1e-10:
/// max(16, ⌈8 (n̄_max + 1) e^{2|ξ̄|}⌉). Requires Ω₂ < Ω₁.
Index default_truncation(const CouplingParams& params);

/// Σ_k s^k n̄₀^{k/2}/(n̄₀+1)^{(k+1)/2} |k⟩_c|k⟩_v on N×N levels, s = ±1.
/// Its squared norm is 1 − (n̄₀/(n̄₀+1))^N.
Vector two_mode_squeezed(double n_bar0, Index N, int sign = 1);

struct LosslessKet {
  Vector psi;
  JointDims dims;
  double norm_deficit = 0.0;  ///< 1 − ‖ψ‖² after cropping
  LosslessSpec spec;
};

/// D_c(u₀) S_c(−ξ₀) ⊗ D_v(v₀) S_v(ξ₀) applied to the two-mode squeezed
/// vacuum. Requires γ = 0 and Λ₀² > 0.
LosslessKet lossless_ket(const CouplingParams& params, Complex alpha, Complex beta, double t,
                         JointDims dims, Index padding = 10);

/// Both modes' quadrature statistics measured on a joint density.
QuadTuple quad_stats_joint(const FockDensity& joint);

}  // namespace ioncav
