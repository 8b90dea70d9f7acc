#pragma once

#include <optional>
#include <vector>

#include "ioncav/envelope.hpp"
#include "ioncav/params.hpp"

namespace ioncav {

/// Squeezed-thermal description of one mode at one time, together with
/// the weights it was assembled from.
struct ModeSpec {
  Mode mode = Mode::Cavity;
  double t = 0.0;
  double n_bar = 0.0;  ///< thermal occupation, >= 0
  double xi = 0.0;     ///< squeeze parameter; <= 0 for the cavity, >= 0 for the motion
  double zeta = 0.0;   ///< joint weight f·g
  double mu = 0.0;
  double nu = 0.0;
};

/// n̄_σ(t), ξ_σ(t) and the weights μ_σ, ν_σ, ζ.
///
/// Cavity: ν = g², μ = q g². Motion: ν = (1 − f²)/(q² − 1), μ = −q ν.
/// Then n̄ = −1/2 + √((ν + 1/2)² − μ²) and
/// ξ = ¼ ln((ν + 1/2 − μ)/(ν + 1/2 + μ)).
///
/// Ω₂ = 0 gives the vacuum (all zeros). Throws RegimeError for the
/// motion at equal coupling (singular there) and ValidityError when a
/// square-root or logarithm argument leaves its domain.
ModeSpec mode_spec(const CouplingParams& params, double t, Mode mode);

/// ξ̄ = ½ ln((Ω₁ + Ω₂)/|Ω₁ − Ω₂|), the squeeze of the motion in the steady
/// state and at every τ_n. RegimeError at equal coupling.
double steady_squeeze(const CouplingParams& params);

/// Upper bound ½(1/√(1 − (Ω₂/Ω₁)²) − 1) on n̄_c and n̄_v. Requires Ω₂ < Ω₁.
double nbar_max(const CouplingParams& params);

/// Motion revivals τ_n (zeros of f) and cavity revivals τ′_n (zeros of g)
/// up to a horizon.
struct RevivalSchedule {
  std::vector<double> tau_motion;
  std::vector<double> tau_cavity;
  double horizon = 0.0;
  double period = 0.0;  ///< π/Λ, spacing of both lists
};

/// Closed-form revival times followed by one Newton step on f (resp. g).
/// Only the Oscillatory regime has revivals; others raise RegimeError.
RevivalSchedule revival_schedule(const CouplingParams& params, double horizon);

/// Centres of the displaced solution for a coherent start (α, β).
struct Displacement {
  Complex u;  ///< cavity amplitude ⟨a⟩(t)
  Complex v;  ///< motion amplitude ⟨b⟩(t)
};

/// u = α h + (β q + β*) g, v = (−α q + α*) g + β f, written through
/// g_per_omega2 so Ω₂ = 0 needs no special case.
Displacement displacement_trajectory(const CouplingParams& params, Complex alpha,
                                     Complex beta, double t);

/// Quadrature means and variances of both modes, X = (a + a†)/√2 and
/// P = (a − a†)/(i√2).
struct QuadTuple {
  double var_xc = 0.5;
  double var_pc = 0.5;
  double var_xv = 0.5;
  double var_pv = 0.5;
  double mean_xc = 0.0;
  double mean_pc = 0.0;
  double mean_xv = 0.0;
  double mean_pv = 0.0;
};

/// Closed-form quadrature statistics. Variances do not depend on the
/// coherent displacement; means come from displacement_trajectory().
/// At equal coupling ΔP_c² = ΔX_v² = 1/2 and
///   ΔX_c² = 1/2 + (8Ω²/γ²)(1 − e^{−γt/2})²
///   ΔP_v² = 1/2 + (16Ω²/γ²)(γt/2 + e^{−γt/2} − 1)
/// (the Ω₂ → Ω₁ limit of the generic forms; both tend to 1/2 + 2Ω²t² as γ → 0).
QuadTuple quad_variances(const CouplingParams& params, double t, Complex alpha = {},
                         Complex beta = {});

/// Variances of a squeezed thermal state: ((n̄ + ½)e^{−2ξ}, (n̄ + ½)e^{2ξ}).
struct VariancePair {
  double var_x;
  double var_p;
};
VariancePair squeezed_thermal_variances(double n_bar, double xi);

/// Inverse of squeezed_thermal_variances().
struct SqueezedThermal {
  double n_bar;
  double xi;
};
SqueezedThermal squeezed_thermal_from_variances(double var_x, double var_p);

/// Pure-state parameters of the lossless (γ = 0) evolution from a
/// product of coherent states.
struct LosslessSpec {
  double t = 0.0;
  double n_bar0 = 0.0;
  double xi0 = 0.0;
  Complex u0;
  Complex v0;
  Complex alpha_bar;
  Complex beta_bar;
  /// Sign carried by the two-mode-squeezed amplitudes: the k-th term is
  /// multiplied by pair_sign^k, with pair_sign = sgn sin(2Λ₀t).
  int pair_sign = 1;
  /// 1..4 when t sits on t_m = mπ/(2Λ₀), naming the product state reached
  /// (D(α)|0⟩D(β)|0⟩, squeezed at (ᾱ, β̄), mirrored, mirrored squeezed).
  std::optional<int> product_state;
};

/// Requires γ = 0 and Λ₀² > 0; RegimeError otherwise.
LosslessSpec lossless_spec(const CouplingParams& params, Complex alpha, Complex beta, double t);

}  // namespace ioncav
