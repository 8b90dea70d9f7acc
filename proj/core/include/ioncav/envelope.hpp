#pragma once

#include "ioncav/params.hpp"

namespace ioncav {

/// The scalar envelope triple that carries all time dependence of the
/// damped solution.
///
///   f(t) = (cos Λt + γ/(4Λ) sin Λt) e^{−γt/4}
///   g(t) = (Ω₂/Λ) sin Λt e^{−γt/4}
///   h(t) = (cos Λt − γ/(4Λ) sin Λt) e^{−γt/4}
///
/// with cos/sin continued to cosh/sinh when Λ² < 0 and to the Λ → 0
/// limit in the degenerate case, so every value is real.
struct EnvelopeValues {
  double t = 0.0;
  double f = 1.0;
  double g = 0.0;
  double h = 1.0;
  /// sin(Λt)/Λ · e^{−γt/4}, so that g = Ω₂ · g_per_omega2. Finite for
  /// Ω₂ = 0, which lets the Ω₁/Ω₂ · g combinations be formed without q.
  double g_per_omega2 = 0.0;
  double df = 0.0;  ///< f′(t) = −Λ₀² · g_per_omega2
  double dg = 0.0;  ///< g′(t) = Ω₂ · h
};

/// Evaluates the envelopes at t >= 0. Values that would underflow to
/// subnormals are returned as exact zeros (the steady-state limit).
EnvelopeValues envelope(const CouplingParams& params, double t);

}  // namespace ioncav
