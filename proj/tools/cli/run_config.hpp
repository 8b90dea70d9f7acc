#pragma once

#include <string>
#include <vector>

#include <ioncav/params.hpp>

namespace CLI {
class App;
}

namespace ioncav::cli {

/// Everything a command needs. Rates are reported in units of omega1, so
/// all times are dimensionless Ω₁t.
struct RunConfig {
  double omega1 = 1.0;
  double omega2 = 0.6;
  double gamma = 0.4;
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  double beta_re = 0.0;
  double beta_im = 0.0;
  int nc = 15;
  int nv = 15;
  double t_max = 25.0;
  double t_step = 0.01;
  double dt_int = 1e-3;
  double series_tol = 1e-12;
  /// Empty or "-" writes to stdout.
  std::string out_path;
  /// Evaluation times for validate and sweep-ratio; empty selects each
  /// command's default list.
  std::vector<double> times;

  Complex alpha() const { return {alpha_re, alpha_im}; }
  Complex beta() const { return {beta_re, beta_im}; }
};

/// Throws InvalidArgument naming the first bad field.
void validate(const RunConfig& config);

/// Rates divided by omega1, classified.
CouplingParams coupling(const RunConfig& config);

/// Registers one --<field> option per RunConfig field plus --config for a
/// TOML file. Command-line values override the file.
void add_options(CLI::App& app, RunConfig& config);

}  // namespace ioncav::cli
