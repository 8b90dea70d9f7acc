#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cli/run_config.hpp"

namespace ioncav::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitBadConfig = 2,
  kExitValidity = 3,
  kExitNoRevivals = 4,
};

struct ValidateTolerances {
  double trace_distance = 1e-4;
  double fidelity_deficit = 1e-6;
  double quad_delta = 1e-4;
};

/// omega2 used by validate when neither the flags nor --config set it.
inline constexpr double kValidateOmega2 = 0.3;

/// Largest nc·nv the validate command accepts.
inline constexpr int kMaxValidateDim = 1024;

/// Writes content to path through a sibling temp file and a rename, or to
/// out when path is empty or "-". Throws std::runtime_error on I/O errors.
void write_atomic(const std::string& path, std::string_view content, std::ostream& out);

/// Variances, mode parameters and envelopes on the grid 0, t_step, ...
/// up to t_max.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Motion and cavity revival times up to t_max with their residuals.
int cmd_revivals(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Analytical states against the Lindblad integrator at config.times
/// (default 0.5, 1, 2, 4).
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err,
                 const ValidateTolerances& tol = {});

/// ΔX_v² against Ω₂/Ω₁ in [0.1, 1.5] at config.times (default 1, 5, 10).
int cmd_sweep_ratio(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Ratio grid of sweep-ratio: (10 + i)/100 for i = 0..140.
std::vector<double> sweep_ratios();

}  // namespace ioncav::cli
