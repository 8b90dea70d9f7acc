#pragma once

#include <complex>
#include <string_view>

namespace ioncav {

using Complex = std::complex<double>;

/// Which of the two bosonic modes an object refers to.
enum class Mode {
  Cavity,     ///< lossy cavity field, annihilator a
  Vibration,  ///< lossless ion motion, annihilator b
};

std::string_view to_string(Mode mode);

/// Parameter regimes, decided by the sign of
/// Λ² = Ω₁² − Ω₂² − γ²/16 and by the special case Ω₁ = Ω₂.
enum class Regime {
  Oscillatory,    ///< Λ² > 0: damped oscillation, revivals exist
  Degenerate,     ///< Λ² ≈ 0: critically damped limit
  Overdamped,     ///< Λ² < 0, Ω₁ ≠ Ω₂
  EqualCoupling,  ///< Ω₁ = Ω₂: no steady squeeze, q = 1 singularities
};

std::string_view to_string(Regime regime);

/// Relative tolerance on |Ω₁ − Ω₂| / Ω₁ below which the couplings are
/// treated as equal.
inline constexpr double kEqualCouplingTol = 1e-9;

/// |Λ²| / Ω₁² below which the envelope uses the Λ → 0 limit.
inline constexpr double kDegenerateTol = 1e-12;

/// The three rates of the damped two-mode model and the quantities
/// derived from them. Construct through classify_regime() or
/// from_lab_params(); the derived fields are kept consistent there.
struct CouplingParams {
  double omega1 = 1.0;  ///< beam-splitter (exchange) rate, > 0
  double omega2 = 0.0;  ///< two-mode parametric rate, >= 0
  double gamma = 0.0;   ///< cavity energy decay rate, >= 0

  double lambda_sq = 1.0;   ///< Ω₁² − Ω₂² − γ²/16
  double lambda0_sq = 1.0;  ///< Ω₁² − Ω₂²
  Regime regime = Regime::Oscillatory;

  /// True when q = Ω₁/Ω₂ is finite.
  bool has_ratio() const noexcept { return omega2 > 0.0; }

  /// q = Ω₁/Ω₂. Throws InvalidArgument when Ω₂ = 0.
  double q() const;

  /// √|Λ²|; the oscillation frequency when Oscillatory, the hyperbolic
  /// rate when Overdamped.
  double lambda() const;

  /// Same physics in units where Ω₁ = 1 (rates divided by Ω₁). Times
  /// measured in the original units must be multiplied by omega1.
  CouplingParams normalized() const;
};

/// Validates the rates and fills the derived fields and regime tag.
/// Throws InvalidArgument for Ω₁ <= 0, Ω₂ < 0, γ < 0 or non-finite input.
CouplingParams classify_regime(double omega1, double omega2, double gamma);

/// Laboratory knobs from which the effective Raman couplings follow.
struct LabParams {
  double eta_c = 0.0;  ///< Lamb-Dicke parameter of the cavity mode
  double g1 = 0.0;     ///< ion-laser coupling, beam 1 (angular rate)
  double g2 = 0.0;     ///< ion-laser coupling, beam 2 (angular rate)
  double gc = 0.0;     ///< ion-cavity coupling (angular rate)
  double delta = 0.0;  ///< detuning Δ from the excited level, nonzero
};

/// Ω₁ = η_c g₁ g_c / |Δ|, Ω₂ = η_c g₂ g_c / |Δ|. The cavity decay rate
/// is not a function of the lab couplings and is passed through.
CouplingParams from_lab_params(const LabParams& lab, double gamma);

}  // namespace ioncav
