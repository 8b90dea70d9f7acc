#include "ioncav/params.hpp"

#include <cmath>
#include <string>

#include "ioncav/error.hpp"

namespace ioncav {

std::string_view to_string(Mode mode) {
  return mode == Mode::Cavity ? "cavity" : "vibration";
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Oscillatory:
      return "Oscillatory";
    case Regime::Degenerate:
      return "Degenerate";
    case Regime::Overdamped:
      return "Overdamped";
    case Regime::EqualCoupling:
      return "EqualCoupling";
  }
  return "?";
}

double CouplingParams::q() const {
  if (!has_ratio()) {
    throw InvalidArgument("q = omega1/omega2 is undefined for omega2 = 0");
  }
  return omega1 / omega2;
}

double CouplingParams::lambda() const { return std::sqrt(std::abs(lambda_sq)); }

CouplingParams CouplingParams::normalized() const {
  return classify_regime(1.0, omega2 / omega1, gamma / omega1);
}

CouplingParams classify_regime(double omega1, double omega2, double gamma) {
  if (!std::isfinite(omega1) || !std::isfinite(omega2) || !std::isfinite(gamma)) {
    throw InvalidArgument("coupling rates must be finite");
  }
  if (omega1 <= 0.0) {
    throw InvalidArgument("omega1 must be > 0, got " + std::to_string(omega1));
  }
  if (omega2 < 0.0) {
    throw InvalidArgument("omega2 must be >= 0, got " + std::to_string(omega2));
  }
  if (gamma < 0.0) {
    throw InvalidArgument("gamma must be >= 0, got " + std::to_string(gamma));
  }

  CouplingParams p;
  p.omega1 = omega1;
  p.omega2 = omega2;
  p.gamma = gamma;
  // (Ω₁ − Ω₂)(Ω₁ + Ω₂) keeps Λ₀² accurate close to equal coupling.
  p.lambda0_sq = (omega1 - omega2) * (omega1 + omega2);
  p.lambda_sq = p.lambda0_sq - gamma * gamma / 16.0;

  const double eps_lambda = kDegenerateTol * omega1 * omega1;
  if (std::abs(omega1 - omega2) <= kEqualCouplingTol * omega1) {
    p.regime = Regime::EqualCoupling;
  } else if (p.lambda_sq > eps_lambda) {
    p.regime = Regime::Oscillatory;
  } else if (p.lambda_sq < -eps_lambda) {
    p.regime = Regime::Overdamped;
  } else {
    p.regime = Regime::Degenerate;
  }
  return p;
}

CouplingParams from_lab_params(const LabParams& lab, double gamma) {
  if (lab.delta == 0.0) {
    throw InvalidArgument("detuning delta must be nonzero");
  }
  if (!(lab.eta_c > 0.0)) {
    throw InvalidArgument("Lamb-Dicke parameter eta_c must be > 0");
  }
  if (lab.g1 < 0.0 || lab.g2 < 0.0 || lab.gc < 0.0) {
    throw InvalidArgument("lab couplings g1, g2, gc must be >= 0");
  }
  const double scale = lab.eta_c * lab.gc / std::abs(lab.delta);
  return classify_regime(scale * lab.g1, scale * lab.g2, gamma);
}

}  // namespace ioncav
