#include "cli/app.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace ioncav::cli {

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Damped cavity / trapped-ion motion model: closed forms and oracle checks",
               "ioncav"};
  RunConfig config;
  add_options(app, config);
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Variance and envelope time series as CSV");
  auto* revivals = app.add_subcommand("revivals", "Revival times up to t_max");
  auto* validate = app.add_subcommand("validate", "Analytical states against the integrator");
  auto* sweep = app.add_subcommand("sweep-ratio", "Motion X variance against omega2/omega1");
  for (auto* sub : {simulate, revivals, validate, sweep}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  if (simulate->parsed()) {
    return cmd_simulate(config, out, err);
  }
  if (revivals->parsed()) {
    return cmd_revivals(config, out, err);
  }
  if (validate->parsed()) {
    // The validation scenario runs at Ω₂/Ω₁ = 0.3 unless told otherwise.
    if (app.get_option("--omega2")->count() == 0) {
      config.omega2 = kValidateOmega2;
    }
    return cmd_validate(config, out, err);
  }
  return cmd_sweep_ratio(config, out, err);
}

}  // namespace ioncav::cli
