#include "ioncav/assembly.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ioncav/error.hpp"

namespace ioncav {

namespace {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("time must be finite and >= 0, got " + std::to_string(t));
  }
}

// Transformation D(w) S(ξ) on `levels` levels; identity factors are skipped.
Matrix displaced_squeeze(Complex w, double xi, Index levels) {
  Matrix t = squeeze_op(xi, levels).matrix();
  if (w != Complex{}) {
    t = displacement_op(w, levels).matrix() * t;
  }
  return t;
}

// Builds Q^{m,n}(n̄, ξ) for every m + n <= order on a padded space, applies
// the displacement, and crops. Indexed [m][n].
class ModeFactors {
 public:
  ModeFactors(double n_bar, double xi, Complex shift, int order, Index levels, Index padding)
      : order_(order), levels_(levels) {
    const Index work = levels + padding;
    const Matrix frame = displaced_squeeze(shift, xi, work);

    // R^{s−k,k} for each total order s.
    std::vector<std::vector<Matrix>> r(order + 1);
    for (int s = 0; s <= order; ++s) {
      r[s].reserve(s + 1);
      for (int k = 0; k <= s; ++k) {
        r[s].push_back(r_operator(s - k, k, n_bar, work).matrix());
      }
    }

    q_.resize(order + 1);
    for (int m = 0; m <= order; ++m) {
      for (int n = 0; m + n <= order; ++n) {
        const int s = m + n;
        Matrix inner = Matrix::Zero(work, work);
        for (int k = 0; k <= s; ++k) {
          const double c = c_coefficient(m, n, k, xi);
          if (c != 0.0) {
            inner += c * r[s][k];
          }
        }
        const Matrix full = frame * inner * frame.adjoint();
        q_[m].push_back(full.topLeftCorner(levels, levels));
      }
    }
  }

  const Matrix& at(int m, int n) const { return q_[m][n]; }

 private:
  int order_;
  Index levels_;
  std::vector<std::vector<Matrix>> q_;
};

void accumulate_kron(Matrix& out, Complex weight, const Matrix& a, const Matrix& b) {
  const Index nb = b.rows();
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      const Complex w = weight * a(i, j);
      if (w != Complex{}) {
        out.block(i * nb, j * nb, nb, nb) += w * b;
      }
    }
  }
}

}  // namespace

int default_mn_cutoff(double zeta, double series_tol) {
  if (!(series_tol > 0.0)) {
    throw InvalidArgument("series_tol must be > 0");
  }
  const double a = std::abs(zeta);
  if (a == 0.0) {
    return 0;
  }
  if (!(a < 1.0)) {
    throw BudgetError("|f g| = " + std::to_string(a) +
                      " >= 1: the joint series does not converge geometrically");
  }
  double tail = a / (1.0 - a);
  for (int m = 0; m <= kMaxSeriesOrder; ++m) {
    if (tail < series_tol) {
      return m;
    }
    tail *= a;
  }
  throw BudgetError("series order needed for |f g| = " + std::to_string(a) + " exceeds " +
                    std::to_string(kMaxSeriesOrder));
}

AssembledState assemble_joint_density(const CouplingParams& params, double t, Complex alpha,
                                      Complex beta, const AssemblyBudget& budget) {
  require_time(t);
  if (budget.dims.cavity < 2 || budget.dims.vibration < 2) {
    throw InvalidArgument("assembly dims must be >= 2 per mode");
  }
  if (budget.padding < 0) {
    throw InvalidArgument("assembly padding must be >= 0");
  }
  if (budget.mn_cutoff > kMaxSeriesOrder) {
    throw BudgetError("mn_cutoff above " + std::to_string(kMaxSeriesOrder));
  }
  if (params.regime == Regime::EqualCoupling) {
    throw RegimeError("joint assembly is undefined at omega1 = omega2");
  }

  const ModeSpec cav = mode_spec(params, t, Mode::Cavity);
  const ModeSpec vib = mode_spec(params, t, Mode::Vibration);
  const double zeta = cav.zeta;

  AssembledState out;
  out.mn_cutoff =
      budget.mn_cutoff >= 0 ? budget.mn_cutoff : default_mn_cutoff(zeta, budget.series_tol);
  const double a = std::abs(zeta);
  out.tail_bound = a == 0.0 ? 0.0
                   : a < 1.0 ? std::pow(a, out.mn_cutoff + 1) / (1.0 - a)
                             : std::numeric_limits<double>::infinity();
  if (out.tail_bound > budget.series_tol) {
    throw BudgetError("series tail bound " + std::to_string(out.tail_bound) +
                      " exceeds series_tol with mn_cutoff = " + std::to_string(out.mn_cutoff));
  }

  const Displacement d = displacement_trajectory(params, alpha, beta, t);
  const ModeFactors qc(cav.n_bar, cav.xi, d.u, out.mn_cutoff, budget.dims.cavity, budget.padding);
  const ModeFactors qv(vib.n_bar, vib.xi, d.v, out.mn_cutoff, budget.dims.vibration,
                       budget.padding);

  Matrix rho = Matrix::Zero(budget.dims.total(), budget.dims.total());
  for (int m = 0; m <= out.mn_cutoff; ++m) {
    for (int n = 0; m + n <= out.mn_cutoff; ++n) {
      const double weight = std::pow(zeta, m + n);
      if (weight == 0.0 && m + n > 0) {
        continue;
      }
      accumulate_kron(rho, weight, qc.at(m, n), qv.at(m, n));
    }
  }
  out.rho = FockDensity::joint(std::move(rho), budget.dims);
  out.trace_deficit = std::abs(1.0 - out.rho.trace());
  return out;
}

FockDensity reduced_density(const CouplingParams& params, double t, Mode mode, Complex alpha,
                            Complex beta, Index N, Index padding) {
  require_time(t);
  if (N < 2 || padding < 0) {
    throw InvalidArgument("reduced_density: need N >= 2 and padding >= 0");
  }
  double n_bar = 0.0;
  double xi = 0.0;
  if (mode == Mode::Vibration && params.regime == Regime::EqualCoupling) {
    const QuadTuple q = quad_variances(params, t);
    const SqueezedThermal st = squeezed_thermal_from_variances(q.var_xv, q.var_pv);
    n_bar = st.n_bar;
    xi = st.xi;
  } else {
    const ModeSpec spec = mode_spec(params, t, mode);
    n_bar = spec.n_bar;
    xi = spec.xi;
  }
  const Displacement d = displacement_trajectory(params, alpha, beta, t);
  const Complex shift = mode == Mode::Cavity ? d.u : d.v;

  const Index work = N + padding;
  const Matrix frame = displaced_squeeze(shift, xi, work);
  const Matrix full = frame * thermal_state(n_bar, work).matrix() * frame.adjoint();
  return FockDensity::single(full.topLeftCorner(N, N));
}

Vector squeezed_vacuum_ket(double xi, Index N, Index padding) {
  const Matrix s = squeeze_op(xi, N + padding).matrix();
  return s.col(0).head(N);
}

Index default_truncation(const CouplingParams& params) {
  const double n_max = nbar_max(params);
  const double xi_bar = steady_squeeze(params);
  const double n = std::ceil(8.0 * (n_max + 1.0) * std::exp(2.0 * std::abs(xi_bar)));
  return std::max<Index>(16, static_cast<Index>(n));
}

Vector two_mode_squeezed(double n_bar0, Index N, int sign) {
  if (!(n_bar0 >= 0.0) || N < 1) {
    throw InvalidArgument("two_mode_squeezed: need n_bar0 >= 0 and N >= 1");
  }
  Vector psi = Vector::Zero(N * N);
  const double step = (sign < 0 ? -1.0 : 1.0) * std::sqrt(n_bar0 / (n_bar0 + 1.0));
  double amp = 1.0 / std::sqrt(n_bar0 + 1.0);
  for (Index k = 0; k < N; ++k) {
    psi(k * N + k) = amp;
    amp *= step;
  }
  return psi;
}

LosslessKet lossless_ket(const CouplingParams& params, Complex alpha, Complex beta, double t,
                         JointDims dims, Index padding) {
  if (dims.cavity < 2 || dims.vibration < 2 || padding < 0) {
    throw InvalidArgument("lossless_ket: need dims >= 2 and padding >= 0");
  }
  LosslessKet out;
  out.spec = lossless_spec(params, alpha, beta, t);
  out.dims = dims;

  const Index pc = dims.cavity + padding;
  const Index pv = dims.vibration + padding;
  Matrix amplitudes = Matrix::Zero(pc, pv);
  {
    const Index diag = std::min(pc, pv);
    const double n0 = out.spec.n_bar0;
    const double step = out.spec.pair_sign * std::sqrt(n0 / (n0 + 1.0));
    double amp = 1.0 / std::sqrt(n0 + 1.0);
    for (Index k = 0; k < diag; ++k) {
      amplitudes(k, k) = amp;
      amp *= step;
    }
  }
  const Matrix left = displaced_squeeze(out.spec.u0, -out.spec.xi0, pc);
  const Matrix right = displaced_squeeze(out.spec.v0, out.spec.xi0, pv);
  const Matrix evolved = left * amplitudes * right.transpose();

  out.psi.resize(dims.total());
  for (Index c = 0; c < dims.cavity; ++c) {
    for (Index v = 0; v < dims.vibration; ++v) {
      out.psi(c * dims.vibration + v) = evolved(c, v);
    }
  }
  out.norm_deficit = 1.0 - out.psi.squaredNorm();
  return out;
}

QuadTuple quad_stats_joint(const FockDensity& joint) {
  const ModeQuadStats c = quad_stats(partial_trace(joint, Mode::Cavity));
  const ModeQuadStats v = quad_stats(partial_trace(joint, Mode::Vibration));
  QuadTuple q;
  q.var_xc = c.var_x;
  q.var_pc = c.var_p;
  q.var_xv = v.var_x;
  q.var_pv = v.var_p;
  q.mean_xc = c.mean_x;
  q.mean_pc = c.mean_p;
  q.mean_xv = v.mean_x;
  q.mean_pv = v.mean_p;
  return q;
}

}  // namespace ioncav
