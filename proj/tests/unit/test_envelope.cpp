#include <cmath>
#include <vector>

#include <gtest/gtest.h>
#include <ioncav/envelope.hpp>
#include <ioncav/error.hpp>

#include "support/oracles.hpp"

using namespace ioncav;

namespace {

struct Case {
  const char* name;
  double o1, o2, gamma;
  Regime regime;
};

const Case kBranches[] = {
    {"oscillatory", 1.0, 0.6, 0.4, Regime::Oscillatory},
    {"overdamped", 1.0, 0.99, 0.8, Regime::Overdamped},
    {"degenerate", 1.0, 0.9797958971132712, 0.8, Regime::Degenerate},
    {"equal", 1.0, 1.0, 0.4, Regime::EqualCoupling},
    {"parametric", 1.0, 1.1, 0.5, Regime::Overdamped},
    {"no_drive", 1.0, 0.0, 0.7, Regime::Oscillatory},
};

std::vector<double> grid(double t_max, double step) {
  std::vector<double> ts;
  for (double t = step; t <= t_max + 1e-12; t += step) ts.push_back(t);
  return ts;
}

}  // namespace

TEST(Envelope, InitialValues) {
  for (const auto& c : kBranches) {
    const auto e = envelope(classify_regime(c.o1, c.o2, c.gamma), 0.0);
    EXPECT_EQ(e.f, 1.0) << c.name;
    EXPECT_EQ(e.g, 0.0) << c.name;
    EXPECT_EQ(e.h, 1.0) << c.name;
  }
}

TEST(Envelope, HalfPeriodOscillatory) {
  const auto p = classify_regime(1.0, 0.6, 0.4);
  const double lam = std::sqrt(0.63);
  const double t = M_PI / lam;
  const auto e = envelope(p, t);
  const double want = -std::exp(-0.4 * M_PI / (4.0 * lam));
  EXPECT_NEAR(e.f, want, 1e-13);
  EXPECT_NEAR(e.h, want, 1e-13);
  EXPECT_NEAR(e.g, 0.0, 1e-15);
}

TEST(Envelope, EqualCouplingClosedForm) {
  const double om = 1.0, gamma = 0.4;
  const auto p = classify_regime(om, om, gamma);
  for (double t : grid(20.0, 0.5)) {
    const auto e = envelope(p, t);
    EXPECT_NEAR(e.f, 1.0, 1e-13) << t;
    EXPECT_NEAR(e.g, 2.0 * om / gamma * (1.0 - std::exp(-gamma * t / 2.0)), 1e-12) << t;
  }
}

// f, g, h all solve y'' + (γ/2) y' + Λ₀² y = 0; only the initial data differ.
TEST(Envelope, MatchesOdeOracleInEveryBranch) {
  const auto ts = grid(20.0, 0.25);
  for (const auto& c : kBranches) {
    const auto p = classify_regime(c.o1, c.o2, c.gamma);
    ASSERT_EQ(p.regime, c.regime) << c.name;
    const double w0sq = c.o1 * c.o1 - c.o2 * c.o2;
    const auto f = oracle::damped_oscillator(c.gamma, w0sq, 1.0, 0.0, ts);
    const auto g = oracle::damped_oscillator(c.gamma, w0sq, 0.0, c.o2, ts);
    const auto h = oracle::damped_oscillator(c.gamma, w0sq, 1.0, -0.5 * c.gamma, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto e = envelope(p, ts[i]);
      const double scale = std::max(1.0, std::abs(f[i][0]));
      EXPECT_NEAR(e.f, f[i][0], 1e-8 * scale) << c.name << " t=" << ts[i];
      EXPECT_NEAR(e.g, g[i][0], 1e-8 * std::max(1.0, std::abs(g[i][0]))) << c.name;
      EXPECT_NEAR(e.h, h[i][0], 1e-8 * std::max(1.0, std::abs(h[i][0]))) << c.name;
      EXPECT_NEAR(e.df, f[i][1], 1e-8 * std::max(1.0, std::abs(f[i][1]))) << c.name;
      EXPECT_NEAR(e.dg, g[i][1], 1e-8 * std::max(1.0, std::abs(g[i][1]))) << c.name;
    }
  }
}

TEST(Envelope, ContinuousAcrossDegenerateBoundary) {
  const double gamma = 0.8;
  const double base = 1.0 - gamma * gamma / 16.0;  // Ω₂² at Λ² = 0
  const auto mid = classify_regime(1.0, std::sqrt(base), gamma);
  ASSERT_EQ(mid.regime, Regime::Degenerate);
  const auto above = classify_regime(1.0, std::sqrt(base - 1e-8), gamma);  // Λ² = +1e−8
  const auto below = classify_regime(1.0, std::sqrt(base + 1e-8), gamma);  // Λ² = −1e−8
  ASSERT_EQ(above.regime, Regime::Oscillatory);
  ASSERT_EQ(below.regime, Regime::Overdamped);
  for (double t : {0.3, 1.0, 5.0, 12.0, 20.0}) {
    const auto e0 = envelope(mid, t);
    for (const auto& p : {above, below}) {
      const auto e = envelope(p, t);
      EXPECT_NEAR(e.f, e0.f, 1e-6) << t;
      EXPECT_NEAR(e.g, e0.g, 1e-6) << t;
      EXPECT_NEAR(e.h, e0.h, 1e-6) << t;
    }
  }
}

TEST(Envelope, DegenerateLimitForms) {
  const double gamma = 0.8;
  const auto p = classify_regime(1.0, std::sqrt(1.0 - gamma * gamma / 16.0), gamma);
  for (double t : {0.5, 2.0, 7.0}) {
    const double e = std::exp(-gamma * t / 4.0);
    const auto v = envelope(p, t);
    EXPECT_NEAR(v.f, (1.0 + gamma * t / 4.0) * e, 1e-14);
    EXPECT_NEAR(v.g, p.omega2 * t * e, 1e-14);
    EXPECT_NEAR(v.h, (1.0 - gamma * t / 4.0) * e, 1e-14);
  }
}

TEST(Envelope, DecayBoundAndSteadyState) {
  const auto p = classify_regime(1.0, 0.6, 0.4);
  const double lam = p.lambda();
  const double bound = 1.0 + p.gamma / (4.0 * lam);
  for (double t : grid(60.0, 0.1)) {
    const auto e = envelope(p, t);
    const double env = std::exp(-p.gamma * t / 4.0);
    EXPECT_LE(std::abs(e.f), bound * env + 1e-15);
    EXPECT_LE(std::abs(e.h), bound * env + 1e-15);
    EXPECT_LE(std::abs(e.g), p.omega2 / lam * env + 1e-15);
  }
  const auto late = envelope(p, 400.0);
  EXPECT_LT(std::abs(late.f), 1e-15);
  EXPECT_LT(std::abs(late.g), 1e-15);
}

TEST(Envelope, UnderflowReturnsExactZeros) {
  const auto p = classify_regime(1.0, 0.6, 0.4);
  const auto e = envelope(p, 1e5);
  EXPECT_EQ(e.f, 0.0);
  EXPECT_EQ(e.g, 0.0);
  EXPECT_EQ(e.h, 0.0);
}

TEST(Envelope, IdentityOnExamples) {
  for (const auto& c : kBranches) {
    if (c.o2 == 0.0) continue;
    const auto p = classify_regime(c.o1, c.o2, c.gamma);
    const double q2m1 = (c.o1 * c.o1) / (c.o2 * c.o2) - 1.0;
    for (double t : grid(10.0, 0.37)) {
      const auto e = envelope(p, t);
      const double rhs = std::exp(-c.gamma * t / 2.0);
      // When Ω₂ > Ω₁ both terms grow and cancel; twelve digits survive only
      // while they stay within 1e3 of the right-hand side.
      if (std::abs(e.f * e.h) + std::abs(q2m1 * e.g * e.g) > 1e3 * rhs) continue;
      EXPECT_NEAR(e.f * e.h + q2m1 * e.g * e.g, rhs, 1e-12 * rhs) << c.name << " t=" << t;
    }
  }
}

TEST(Envelope, RejectsBadTimes) {
  const auto p = classify_regime(1.0, 0.6, 0.4);
  EXPECT_THROW(envelope(p, -1e-3), InvalidArgument);
  EXPECT_THROW(envelope(p, NAN), InvalidArgument);
  EXPECT_THROW(envelope(p, INFINITY), InvalidArgument);
}
