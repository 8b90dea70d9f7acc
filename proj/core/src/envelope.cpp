#include "ioncav/envelope.hpp"

#include <cmath>
#include <string>

#include "ioncav/error.hpp"

namespace ioncav {

namespace {

double flush(double x) {
  return std::fpclassify(x) == FP_SUBNORMAL ? 0.0 : x;
}

// cos(Λt)·e^{−γt/4} and sin(Λt)/Λ·e^{−γt/4}, continued analytically,
// with f = cos + (γ/4) sin and h = cos − (γ/4) sin.
struct Kernel {
  double cos_part;
  double sin_part;
  double f;
  double h;
};

Kernel combine(double cos_part, double sin_part, double quarter_gamma) {
  return {cos_part, sin_part, cos_part + quarter_gamma * sin_part,
          cos_part - quarter_gamma * sin_part};
}

Kernel kernel(const CouplingParams& p, double t) {
  const double quarter_gamma = p.gamma / 4.0;
  const double eps_lambda = kDegenerateTol * p.omega1 * p.omega1;

  if (p.lambda_sq > eps_lambda) {
    const double lambda = std::sqrt(p.lambda_sq);
    const double decay = std::exp(-quarter_gamma * t);
    return combine(std::cos(lambda * t) * decay, std::sin(lambda * t) / lambda * decay,
                   quarter_gamma);
  }
  if (p.lambda_sq < -eps_lambda) {
    const double lambda = std::sqrt(-p.lambda_sq);
    if (lambda * t < 1.0) {
      const double decay = std::exp(-quarter_gamma * t);
      return combine(std::cosh(lambda * t) * decay, std::sinh(lambda * t) / lambda * decay,
                     quarter_gamma);
    }
    // Split the hyperbolic functions so large t neither overflows nor
    // loses the slowly decaying branch.
    const double grow = std::exp((lambda - quarter_gamma) * t);
    const double fall = std::exp(-(lambda + quarter_gamma) * t);
    // 1 − γ/(4Λ) = −Λ₀²/(Λ(Λ + γ/4)): exactly zero at equal coupling, where
    // h is the fall branch alone.
    const double minus = -p.lambda0_sq / (lambda * (lambda + quarter_gamma));
    const double plus = 1.0 + quarter_gamma / lambda;
    return {0.5 * (grow + fall), 0.5 * (grow - fall) / lambda, 0.5 * (plus * grow + minus * fall),
            0.5 * (minus * grow + plus * fall)};
  }
  const double decay = std::exp(-quarter_gamma * t);
  return combine(decay, t * decay, quarter_gamma);
}

}  // namespace

EnvelopeValues envelope(const CouplingParams& params, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("envelope time must be finite and >= 0, got " + std::to_string(t));
  }
  const Kernel k = kernel(params, t);

  EnvelopeValues e;
  e.t = t;
  e.f = flush(k.f);
  e.h = flush(k.h);
  e.g_per_omega2 = flush(k.sin_part);
  e.g = flush(params.omega2 * k.sin_part);
  e.df = flush(-params.lambda0_sq * k.sin_part);
  e.dg = flush(params.omega2 * e.h);
  return e;
}

}  // namespace ioncav
