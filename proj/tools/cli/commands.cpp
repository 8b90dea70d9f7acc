#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <ioncav/assembly.hpp>
#include <ioncav/envelope.hpp>
#include <ioncav/error.hpp>
#include <ioncav/observables.hpp>
#include <ioncav/oracle.hpp>

namespace ioncav::cli {

namespace {

// Maps library exceptions onto the exit-code contract.
int guarded(std::ostream& err, const char* command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InvalidArgument& e) {
    fmt::print(err, "{}: {}\n", command, e.what());
    return kExitBadConfig;
  } catch (const ValidityError& e) {
    fmt::print(err, "{}: formula validity guard at t = {:.15g}: {}\n", command, e.time(), e.what());
    return kExitValidity;
  } catch (const RegimeError& e) {
    fmt::print(err, "{}: {}\n", command, e.what());
    return kExitNoRevivals;
  } catch (const ConvergenceError& e) {
    fmt::print(err, "{}: integrator non-convergence: {}\n", command, e.what());
    return kExitCheckFailed;
  } catch (const BudgetError& e) {
    fmt::print(err, "{}: budget exhausted: {}\n", command, e.what());
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    fmt::print(err, "{}: {}\n", command, e.what());
    return kExitCheckFailed;
  }
}

std::vector<double> grid(double t_max, double step) {
  std::vector<double> ts;
  const auto n = static_cast<long>(std::floor(t_max / step + 1e-9));
  ts.reserve(static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) {
    ts.push_back(static_cast<double>(k) * step);
  }
  return ts;
}

struct ModePair {
  SqueezedThermal cavity;
  SqueezedThermal motion;
};

ModePair mode_pair(const CouplingParams& p, double t, const QuadTuple& q) {
  const ModeSpec c = mode_spec(p, t, Mode::Cavity);
  ModePair out{{c.n_bar, c.xi}, {}};
  if (p.regime == Regime::EqualCoupling) {
    out.motion = squeezed_thermal_from_variances(q.var_xv, q.var_pv);
  } else {
    const ModeSpec v = mode_spec(p, t, Mode::Vibration);
    out.motion = {v.n_bar, v.xi};
  }
  return out;
}

std::string fmt_time(double t) { return fmt::format("{:g}", t); }

// Folds −0 into 0 so closed forms like log1p(−0) print cleanly.
double unsigned_zero(double x) { return x + 0.0; }

}  // namespace

void write_atomic(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename onto " + target.string());
  }
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "simulate", [&] {
    validate(config);
    const CouplingParams p = coupling(config);

    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf),
                   "t,var_xc,var_pc,var_xv,var_pv,nbar_c,nbar_v,xi_c,xi_v,f,g,h\n");
    for (double t : grid(config.t_max, config.t_step)) {
      const QuadTuple q = quad_variances(p, t);
      const ModePair m = mode_pair(p, t, q);
      const EnvelopeValues e = envelope(p, t);
      fmt::format_to(std::back_inserter(buf),
                     "{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},{:.15g},"
                     "{:.15g},{:.15g},{:.15g}\n",
                     t, q.var_xc, q.var_pc, q.var_xv, q.var_pv, m.cavity.n_bar, m.motion.n_bar,
                     unsigned_zero(m.cavity.xi), unsigned_zero(m.motion.xi), e.f, e.g, e.h);
    }
    write_atomic(config.out_path, std::string_view(buf.data(), buf.size()), out);
    return kExitOk;
  });
}

int cmd_revivals(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "revivals", [&] {
    validate(config);
    const CouplingParams p = coupling(config);
    RevivalSchedule s;
    try {
      s = revival_schedule(p, config.t_max);
    } catch (const RegimeError&) {
      fmt::print(err, "revivals: no revivals in this regime ({})\n", to_string(p.regime));
      return static_cast<int>(kExitNoRevivals);
    }

    fmt::memory_buffer buf;
    auto put = [&buf]<class... Args>(fmt::format_string<Args...> f, Args&&... args) {
      fmt::format_to(std::back_inserter(buf), f, std::forward<Args>(args)...);
    };
    put("# omega2/omega1={:.15g} gamma/omega1={:.15g} t_max={:.15g}\n", p.omega2, p.gamma,
        config.t_max);
    put("# period pi/Lambda={:.15g}\n", s.period);
    put("kind,n,t,residual\n");
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < s.tau_motion.size() || j < s.tau_cavity.size()) {
      const bool motion_next = j >= s.tau_cavity.size() ||
                               (i < s.tau_motion.size() && s.tau_motion[i] < s.tau_cavity[j]);
      if (motion_next) {
        const double t = s.tau_motion[i];
        put("tau,{},{:.15g},{:.3e}\n", i, t, std::abs(envelope(p, t).f));
        ++i;
      } else {
        const double t = s.tau_cavity[j];
        put("tau_prime,{},{:.15g},{:.3e}\n", j, t, std::abs(envelope(p, t).g));
        ++j;
      }
    }
    write_atomic(config.out_path, std::string_view(buf.data(), buf.size()), out);
    return static_cast<int>(kExitOk);
  });
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err,
                 const ValidateTolerances& tol) {
  return guarded(err, "validate", [&] {
    validate(config);
    if (static_cast<long>(config.nc) * config.nv > kMaxValidateDim) {
      throw InvalidArgument(fmt::format("nc*nv = {} exceeds the validate limit {}",
                                        static_cast<long>(config.nc) * config.nv,
                                        kMaxValidateDim));
    }
    const CouplingParams p = coupling(config);
    const JointDims dims{config.nc, config.nv};
    std::vector<double> times = config.times;
    if (times.empty()) {
      times = {0.5, 1.0, 2.0, 4.0};
    }
    std::sort(times.begin(), times.end());

    Vector psi0 = tensor_ket(coherent_ket(config.alpha(), dims.cavity),
                             coherent_ket(config.beta(), dims.vibration));
    psi0.normalize();
    IntegratorConfig ic;
    ic.dt = config.dt_int;
    ic.t_max = times.back();
    ic.halving_check = true;

    fmt::print(out,
               "validate: omega2/omega1={:g} gamma/omega1={:g} nc={} nv={} dt={:g} "
               "regime={}\n",
               p.omega2, p.gamma, dims.cavity, dims.vibration, ic.dt, to_string(p.regime));
    const auto trajectory = evolve_to_times(p, pure_density(psi0, dims), times, ic);

    int failures = 0;
    for (const EvolveResult& r : trajectory) {
      std::vector<std::string> failed;
      if (!r.converged) {
        failed.push_back("integrator non-convergence");
      }

      std::string td = "n/a";
      if (p.regime != Regime::EqualCoupling) {
        AssemblyBudget budget;
        budget.dims = dims;
        budget.series_tol = config.series_tol;
        const AssembledState a =
            assemble_joint_density(p, r.t, config.alpha(), config.beta(), budget);
        const double d = trace_distance(a.rho, r.rho);
        td = fmt::format("{:.3e}", d);
        if (!(d < tol.trace_distance)) {
          failed.push_back("trace_distance");
        }
      }

      const FockDensity oc = partial_trace(r.rho, Mode::Cavity);
      const FockDensity ov = partial_trace(r.rho, Mode::Vibration);
      const double dc = 1.0 - fidelity(oc, reduced_density(p, r.t, Mode::Cavity, config.alpha(),
                                                           config.beta(), dims.cavity));
      const double dv =
          1.0 - fidelity(ov, reduced_density(p, r.t, Mode::Vibration, config.alpha(),
                                             config.beta(), dims.vibration));
      if (!(dc < tol.fidelity_deficit)) {
        failed.push_back("fidelity_cavity");
      }
      if (!(dv < tol.fidelity_deficit)) {
        failed.push_back("fidelity_motion");
      }

      const QuadTuple want = quad_variances(p, r.t, config.alpha(), config.beta());
      const QuadTuple got = quad_stats_joint(r.rho);
      const double dq = std::max({std::abs(want.var_xc - got.var_xc),
                                  std::abs(want.var_pc - got.var_pc),
                                  std::abs(want.var_xv - got.var_xv),
                                  std::abs(want.var_pv - got.var_pv),
                                  std::abs(want.mean_xc - got.mean_xc),
                                  std::abs(want.mean_pc - got.mean_pc),
                                  std::abs(want.mean_xv - got.mean_xv),
                                  std::abs(want.mean_pv - got.mean_pv)});
      if (!(dq < tol.quad_delta)) {
        failed.push_back("quad_delta");
      }

      std::string lossless;
      if (p.gamma == 0.0 && p.lambda0_sq > 0.0) {
        const LosslessKet k = lossless_ket(p, config.alpha(), config.beta(), r.t, dims);
        const double dl = 1.0 - fidelity_with_pure(r.rho, k.psi);
        lossless = fmt::format(" lossless_deficit={:.3e}", dl);
        if (!(dl < tol.fidelity_deficit)) {
          failed.push_back("lossless_fidelity");
        }
      }

      std::string status = "ok";
      if (!failed.empty()) {
        ++failures;
        status = "FAIL";
        for (const auto& name : failed) {
          status += " " + name;
        }
      }
      fmt::print(out,
                 "t={} trace_distance={} fidelity_deficit_c={:.3e} fidelity_deficit_v={:.3e} "
                 "quad_delta={:.3e} halving={:.3e}{} {}\n",
                 fmt_time(r.t), td, dc, dv, dq, r.halving_distance, lossless, status);
    }
    if (failures > 0) {
      fmt::print(out, "validate: FAIL ({} of {} times)\n", failures, trajectory.size());
      return static_cast<int>(kExitCheckFailed);
    }
    fmt::print(out, "validate: PASS\n");
    return static_cast<int>(kExitOk);
  });
}

std::vector<double> sweep_ratios() {
  std::vector<double> r;
  r.reserve(141);
  for (int i = 0; i <= 140; ++i) {
    r.push_back(static_cast<double>(10 + i) / 100.0);
  }
  return r;
}

int cmd_sweep_ratio(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "sweep-ratio", [&] {
    validate(config);
    std::vector<double> times = config.times;
    if (times.empty()) {
      times = {1.0, 5.0, 10.0};
    }
    const double gamma = config.gamma / config.omega1;

    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "ratio");
    for (double t : times) {
      fmt::format_to(std::back_inserter(buf), ",var_xv_t{}", fmt_time(t));
    }
    fmt::format_to(std::back_inserter(buf), "\n");
    for (double ratio : sweep_ratios()) {
      const CouplingParams p = classify_regime(1.0, ratio, gamma);
      fmt::format_to(std::back_inserter(buf), "{:.15g}", ratio);
      for (double t : times) {
        fmt::format_to(std::back_inserter(buf), ",{:.15g}", quad_variances(p, t).var_xv);
      }
      fmt::format_to(std::back_inserter(buf), "\n");
    }
    write_atomic(config.out_path, std::string_view(buf.data(), buf.size()), out);
    return static_cast<int>(kExitOk);
  });
}

}  // namespace ioncav::cli
