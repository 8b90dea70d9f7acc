#include "cli/run_config.hpp"

#include <cmath>
#include <string>

#include <CLI11.hpp>
#include <ioncav/error.hpp>

namespace ioncav::cli {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw InvalidArgument("invalid config: " + what);
  }
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void validate(const RunConfig& c) {
  require(finite(c.omega1) && c.omega1 > 0.0, "omega1 must be > 0");
  require(finite(c.omega2) && c.omega2 >= 0.0, "omega2 must be >= 0");
  require(finite(c.gamma) && c.gamma >= 0.0, "gamma must be >= 0");
  require(finite(c.alpha_re) && finite(c.alpha_im), "alpha must be finite");
  require(finite(c.beta_re) && finite(c.beta_im), "beta must be finite");
  require(c.nc >= 2, "nc must be >= 2");
  require(c.nv >= 2, "nv must be >= 2");
  require(finite(c.t_max) && c.t_max >= 0.0, "t_max must be >= 0");
  require(finite(c.t_step) && c.t_step > 0.0, "t_step must be > 0");
  require(c.t_max / c.t_step <= 1e7, "t_max / t_step exceeds 1e7 grid points");
  require(finite(c.dt_int) && c.dt_int > 0.0, "dt_int must be > 0");
  require(finite(c.series_tol) && c.series_tol > 0.0 && c.series_tol < 1.0,
          "series_tol must lie in (0, 1)");
  for (double t : c.times) {
    require(finite(t) && t >= 0.0, "times must be finite and >= 0");
  }
}

CouplingParams coupling(const RunConfig& c) {
  return classify_regime(c.omega1, c.omega2, c.gamma).normalized();
}

void add_options(CLI::App& app, RunConfig& c) {
  app.set_config("--config", "", "TOML file with RunConfig keys");
  app.option_defaults()->always_capture_default();
  app.add_option("--omega1", c.omega1, "Beam-splitter rate (sets the unit)");
  app.add_option("--omega2", c.omega2, "Two-mode parametric rate");
  app.add_option("--gamma", c.gamma, "Cavity decay rate");
  app.add_option("--alpha_re", c.alpha_re, "Initial cavity amplitude, real part");
  app.add_option("--alpha_im", c.alpha_im, "Initial cavity amplitude, imaginary part");
  app.add_option("--beta_re", c.beta_re, "Initial motion amplitude, real part");
  app.add_option("--beta_im", c.beta_im, "Initial motion amplitude, imaginary part");
  app.add_option("--nc", c.nc, "Cavity Fock levels");
  app.add_option("--nv", c.nv, "Motion Fock levels");
  app.add_option("--t_max", c.t_max, "Output horizon (units of 1/omega1)");
  app.add_option("--t_step", c.t_step, "Output grid spacing");
  app.add_option("--dt_int", c.dt_int, "RK4 step of the oracle integrator");
  app.add_option("--series_tol", c.series_tol, "Tail tolerance of the joint series");
  app.add_option("--out_path", c.out_path, "Output file; stdout when empty");
  app.add_option("--times", c.times, "Evaluation times for validate / sweep-ratio");
}

}  // namespace ioncav::cli
