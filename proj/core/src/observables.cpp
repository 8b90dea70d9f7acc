#include "ioncav/observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "ioncav/error.hpp"

namespace ioncav {

namespace {

constexpr double kRootSlack = 1e-12;
constexpr double kPolishLimit = 1e-9;
constexpr std::size_t kMaxRevivals = 10'000'000;

std::string point(const CouplingParams& p, double t) {
  std::ostringstream os;
  os.precision(10);
  os << "(omega1=" << p.omega1 << ", omega2=" << p.omega2 << ", gamma=" << p.gamma << ", t=" << t
     << ")";
  return os.str();
}

// (1 − e^{−x})/x, → 1 as x → 0.
double relax_ratio(double x) { return x == 0.0 ? 1.0 : -std::expm1(-x) / x; }

// 2(x + e^{−x} − 1)/x², → 1 as x → 0.
double drift_ratio(double x) {
  if (x < 1e-3) {
    return 1.0 - x / 3.0 + x * x / 12.0 - x * x * x / 60.0;
  }
  return 2.0 * (x + std::expm1(-x)) / (x * x);
}

}  // namespace

ModeSpec mode_spec(const CouplingParams& params, double t, Mode mode) {
  const EnvelopeValues env = envelope(params, t);

  ModeSpec spec;
  spec.mode = mode;
  spec.t = t;
  spec.zeta = env.f * env.g;
  if (!params.has_ratio()) {
    return spec;
  }

  if (mode == Mode::Cavity) {
    spec.nu = env.g * env.g;
    spec.mu = params.omega1 * env.g_per_omega2 * env.g;
  } else {
    if (params.regime == Regime::EqualCoupling) {
      throw RegimeError("motion squeezed-thermal parameters are singular at omega1 = omega2 " +
                        point(params, t));
    }
    const double one_minus_f2 = (1.0 - env.f) * (1.0 + env.f);
    spec.nu = params.omega2 * params.omega2 * one_minus_f2 / params.lambda0_sq;
    spec.mu = -params.omega1 * params.omega2 * one_minus_f2 / params.lambda0_sq;
  }

  // (ν + ½)² − μ² − ¼, grouped to avoid cancellation.
  const double excess = spec.nu + (spec.nu - spec.mu) * (spec.nu + spec.mu);
  if (!std::isfinite(excess)) {
    throw ValidityError("squeezed-thermal weights overflow at " + point(params, t), t);
  }
  if (excess < -kRootSlack) {
    throw ValidityError("n_bar root argument below 1/4 for " + std::string(to_string(mode)) +
                            " mode at " + point(params, t),
                        t);
  }
  spec.n_bar = std::max(0.0, excess / (0.5 + std::sqrt(0.25 + std::max(excess, 0.0))));

  const double num = spec.nu + 0.5 - spec.mu;
  const double den = spec.nu + 0.5 + spec.mu;
  if (!(num > 0.0) || !(den > 0.0)) {
    throw ValidityError("squeeze logarithm argument non-positive for " +
                            std::string(to_string(mode)) + " mode at " + point(params, t),
                        t);
  }
  spec.xi = 0.25 * std::log1p(-2.0 * spec.mu / den);
  return spec;
}

double steady_squeeze(const CouplingParams& params) {
  if (params.regime == Regime::EqualCoupling) {
    throw RegimeError("steady squeeze is undefined at omega1 = omega2");
  }
  const double gap = std::abs(params.omega1 - params.omega2);
  const double smaller = std::min(params.omega1, params.omega2);
  return 0.5 * std::log1p(2.0 * smaller / gap);
}

double nbar_max(const CouplingParams& params) {
  if (!(params.omega2 < params.omega1) || params.regime == Regime::EqualCoupling) {
    throw RegimeError("nbar_max requires omega2 < omega1");
  }
  const double r = params.omega2 / params.omega1;
  const double root = std::sqrt((1.0 - r) * (1.0 + r));
  return r * r / (2.0 * root * (1.0 + root));
}

RevivalSchedule revival_schedule(const CouplingParams& params, double horizon) {
  if (params.regime != Regime::Oscillatory) {
    throw RegimeError(std::string("no revivals in the ") + std::string(to_string(params.regime)) +
                      " regime");
  }
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("revival horizon must be finite and >= 0");
  }

  RevivalSchedule s;
  s.horizon = horizon;
  const double lambda = std::sqrt(params.lambda_sq);
  s.period = std::numbers::pi / lambda;
  if (horizon / s.period > static_cast<double>(kMaxRevivals)) {
    throw InvalidArgument("revival horizon spans too many periods");
  }

  // arccos lands in (π/2, π) because its argument is in (−1, 0].
  const double phase =
      std::acos(-(params.gamma / 4.0) / std::sqrt(params.lambda0_sq)) / lambda;

  auto polish = [&](double t, bool on_f) {
    const EnvelopeValues e = envelope(params, t);
    const double value = on_f ? e.f : e.g;
    const double slope = on_f ? e.df : e.dg;
    if (value == 0.0 || slope == 0.0) {
      return t;
    }
    const double step = value / slope;
    if (!(std::abs(step) < kPolishLimit)) {
      throw ConvergenceError("revival polish moved a root by " + std::to_string(step));
    }
    return t - step;
  };

  for (std::size_t n = 0;; ++n) {
    const double guess = phase + static_cast<double>(n) * s.period;
    if (guess > horizon) {
      break;
    }
    s.tau_motion.push_back(polish(guess, true));
  }
  s.tau_cavity.push_back(0.0);
  for (std::size_t n = 1;; ++n) {
    const double guess = static_cast<double>(n) * s.period;
    if (guess > horizon) {
      break;
    }
    s.tau_cavity.push_back(params.has_ratio() ? polish(guess, false) : guess);
  }
  return s;
}

Displacement displacement_trajectory(const CouplingParams& params, Complex alpha, Complex beta,
                                     double t) {
  const EnvelopeValues e = envelope(params, t);
  const double s = e.g_per_omega2;
  Displacement d;
  d.u = alpha * e.h + (beta * params.omega1 + std::conj(beta) * params.omega2) * s;
  d.v = (-alpha * params.omega1 + std::conj(alpha) * params.omega2) * s + beta * e.f;
  return d;
}

QuadTuple quad_variances(const CouplingParams& params, double t, Complex alpha, Complex beta) {
  const EnvelopeValues e = envelope(params, t);
  QuadTuple out;

  if (params.regime == Regime::EqualCoupling) {
    const double omega = params.omega1;
    const double x = params.gamma * t / 2.0;
    const double spread = 2.0 * omega * omega * t * t;
    const double relax = relax_ratio(x);
    out.var_xc = 0.5 + spread * relax * relax;
    out.var_pc = 0.5;
    out.var_xv = 0.5;
    out.var_pv = 0.5 + spread * drift_ratio(x);
  } else {
    const double o1 = params.omega1;
    const double o2 = params.omega2;
    const double one_minus_f2 = (1.0 - e.f) * (1.0 + e.f);
    out.var_xc = 0.5 + (o1 + o2) * e.g * e.g_per_omega2;
    out.var_pc = 0.5 - (o1 - o2) * e.g * e.g_per_omega2;
    out.var_xv = 0.5 - o2 / (o1 + o2) * one_minus_f2;
    out.var_pv = 0.5 + o2 / (o1 - o2) * one_minus_f2;
  }

  const Displacement d = displacement_trajectory(params, alpha, beta, t);
  out.mean_xc = std::numbers::sqrt2 * d.u.real();
  out.mean_pc = std::numbers::sqrt2 * d.u.imag();
  out.mean_xv = std::numbers::sqrt2 * d.v.real();
  out.mean_pv = std::numbers::sqrt2 * d.v.imag();
  return out;
}

VariancePair squeezed_thermal_variances(double n_bar, double xi) {
  return {(n_bar + 0.5) * std::exp(-2.0 * xi), (n_bar + 0.5) * std::exp(2.0 * xi)};
}

SqueezedThermal squeezed_thermal_from_variances(double var_x, double var_p) {
  if (!(var_x > 0.0) || !(var_p > 0.0)) {
    throw InvalidArgument("quadrature variances must be positive");
  }
  const double product = var_x * var_p;
  if (product < 0.25 - kRootSlack) {
    throw ValidityError("variance product below the Heisenberg bound 1/4", 0.0);
  }
  return {std::max(0.0, std::sqrt(product) - 0.5), 0.25 * std::log(var_p / var_x)};
}

LosslessSpec lossless_spec(const CouplingParams& params, Complex alpha, Complex beta, double t) {
  if (params.gamma != 0.0) {
    throw RegimeError("lossless solution requires gamma = 0");
  }
  if (!(params.lambda0_sq > 0.0) || params.regime == Regime::EqualCoupling) {
    throw RegimeError("lossless solution requires omega1 > omega2");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("time must be finite and >= 0");
  }

  const double o1 = params.omega1;
  const double o2 = params.omega2;
  const double lambda0 = std::sqrt(params.lambda0_sq);
  const double c1 = std::cos(lambda0 * t);
  const double s1 = std::sin(lambda0 * t);
  const double s2 = std::sin(2.0 * lambda0 * t);
  const double c2 = std::cos(2.0 * lambda0 * t);

  LosslessSpec spec;
  spec.t = t;
  const double y = o2 * o2 / params.lambda0_sq * s2 * s2;
  spec.n_bar0 = y / (2.0 * (std::sqrt(1.0 + y) + 1.0));
  spec.xi0 = 0.25 * std::log((o1 + o2) * (o1 - o2 * c2) / ((o1 - o2) * (o1 + o2 * c2)));
  spec.alpha_bar = (std::conj(beta) * o2 + beta * o1) / lambda0;
  spec.beta_bar = (std::conj(alpha) * o2 - alpha * o1) / lambda0;
  spec.u0 = alpha * c1 + spec.alpha_bar * s1;
  spec.v0 = beta * c1 + spec.beta_bar * s1;
  spec.pair_sign = s2 < 0.0 ? -1 : 1;

  const double quarter_turns = 2.0 * lambda0 * t / std::numbers::pi;
  const double nearest = std::round(quarter_turns);
  if (std::abs(quarter_turns - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    spec.product_state = static_cast<int>(std::fmod(nearest, 4.0)) + 1;
  }
  return spec;
}

}  // namespace ioncav
