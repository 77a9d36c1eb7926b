#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "kuostab/errors.hpp"

namespace kuostab::ode {

template <std::size_t N>
using State = std::array<std::complex<double>, N>;

struct Options {
  /// Local error tolerance relative to the size of the controlled state.
  double tol = 1e-10;
  /// Smallest step relative to the interval length before StepFailure.
  double h_floor = 1e-13;
  /// Only the first `controlled` components enter the error estimate;
  /// trailing components act as running integrals.
  std::size_t controlled = 2;
};

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& s, double a, const State<N>& k) {
  State<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = s[i] + a * k[i];
  }
  return out;
}

template <std::size_t N, class Rhs>
State<N> rk4_step(Rhs& f, double x, const State<N>& s, const State<N>& k1, double h) {
  const State<N> k2 = f(x + 0.5 * h, axpy(s, 0.5 * h, k1));
  const State<N> k3 = f(x + 0.5 * h, axpy(s, 0.5 * h, k2));
  const State<N> k4 = f(x + h, axpy(s, h, k3));
  State<N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace detail

/// Classical RK4 with step doubling and local extrapolation.
///
/// Advances `s` from x0 to x1. `h` carries the step size between calls and
/// is updated on return. Throws StepFailure when the step underflows.
template <std::size_t N, class Rhs>
void integrate(Rhs&& f, double x0, double x1, State<N>& s, double& h, const Options& opt = {}) {
  const double span = x1 - x0;
  if (span == 0.0) {
    return;
  }
  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double h_min = opt.h_floor * std::abs(span);
  h = std::clamp(std::abs(h), h_min, std::abs(span));
  double x = x0;
  while (dir * (x1 - x) > 0.0) {
    const double remaining = std::abs(x1 - x);
    const bool last = h >= remaining;
    const double step = last ? remaining : h;
    const double sh = dir * step;

    const State<N> k1 = f(x, s);
    const State<N> full = detail::rk4_step<N>(f, x, s, k1, sh);
    const State<N> mid = detail::rk4_step<N>(f, x, s, k1, 0.5 * sh);
    const State<N> half = detail::rk4_step<N>(f, x + 0.5 * sh, mid, f(x + 0.5 * sh, mid), 0.5 * sh);

    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < opt.controlled; ++i) {
      err = std::max(err, std::abs(half[i] - full[i]) / 15.0);
      scale = std::max(scale, std::abs(half[i]));
    }
    const double allowed = opt.tol * std::max(scale, 1e-300);
    if (err <= allowed) {
      if (!std::isfinite(err)) {
        throw StepFailure("ode: non-finite state at x = " + std::to_string(x));
      }
      for (std::size_t i = 0; i < N; ++i) {
        s[i] = half[i] + (half[i] - full[i]) / 15.0;
      }
      x = last ? x1 : x + sh;
      const double grow = err > 0.0 ? 0.9 * std::pow(allowed / err, 0.2) : 4.0;
      if (!last) {
        h = step * std::clamp(grow, 0.2, 4.0);
      } else {
        h = std::max(h, step);
      }
      continue;
    }
    const double shrink = std::isfinite(err) ? 0.9 * std::pow(allowed / err, 0.25) : 0.1;
    h = step * std::clamp(shrink, 0.1, 0.5);
    if (h < h_min) {
      throw StepFailure("ode: step underflow at x = " + std::to_string(x));
    }
  }
}

}  // namespace kuostab::ode
