#pragma once

#include <cstddef>

namespace ioncav {

/// Classical fourth-order Runge–Kutta with reusable stage buffers.
/// State is any Eigen dense type; rhs(y, out) writes dy/dt into out.
template <class State>
class Rk4 {
 public:
  explicit Rk4(const State& shape)
      : k1_(shape), k2_(shape), k3_(shape), k4_(shape), tmp_(shape) {}

  template <class Rhs>
  void step(State& y, double h, Rhs&& rhs) {
    rhs(y, k1_);
    tmp_ = y + (0.5 * h) * k1_;
    rhs(tmp_, k2_);
    tmp_ = y + (0.5 * h) * k2_;
    rhs(tmp_, k3_);
    tmp_ = y + h * k3_;
    rhs(tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

  /// n equal steps of size h.
  template <class Rhs>
  void advance(State& y, double h, std::size_t n, Rhs&& rhs) {
    for (std::size_t i = 0; i < n; ++i) {
      step(y, h, rhs);
    }
  }

 private:
  State k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace ioncav
