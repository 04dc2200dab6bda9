#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "specbound/error.hpp"

namespace specbound::numerics {

struct OdeOptions {
  double rel_tol = 1e-10;
  double max_step = 0.05;
  double initial_step = 1e-3;
};

template <std::size_t N>
using OdeState = std::array<double, N>;

/// Dormand-Prince 5(4) with FSAL and a mixed error norm: the local error of every
/// component is measured against rel_tol times the largest component magnitude, so a
/// state that decays (or crosses zero in one component) is still controlled relative
/// to its own size.
///
/// `rhs(t, y) -> dy/dt`. `observer(t, y, dydt) -> bool` is called at t0 and after each
/// accepted step; returning false stops the integration. The last step is clipped to
/// land exactly on t1. Returns the final abscissa reached.
template <std::size_t N, class Rhs, class Observer>
double integrate_dopri5(Rhs&& rhs, double t0, OdeState<N> y, double t1, const OdeOptions& options,
                        Observer&& observer) {
  using State = OdeState<N>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto axpy = [](const State& base, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = base;
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0.0;
      for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
      out[i] += h * acc;
    }
    return out;
  };
  auto magnitude = [](const State& s) {
    double m = 0.0;
    for (double v : s) m = std::max(m, std::abs(v));
    return m;
  };

  double t = t0;
  State k1 = rhs(t, y);
  if (!observer(t, y, k1) || t1 <= t0) return t;

  double h = std::min({options.initial_step, options.max_step, t1 - t0});
  while (t < t1) {
    const double remaining = t1 - t;
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      std::ostringstream msg;
      msg << "integrate_dopri5: step size underflow at t = " << t << " (h = " << h << ")";
      throw NumericError(msg.str());
    }

    const State k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 =
        rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double t_new = last ? t1 : t + h;
    const State k7 = rhs(t_new, y_new);

    double err = 0.0;
    const double scale = options.rel_tol * std::max(magnitude(y), magnitude(y_new)) + 1e-300;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err = std::max(err, std::abs(ei) / scale);
    }
    if (!std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;
      if (!observer(t, y, k1)) return t;
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * grow, options.max_step);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
  return t;
}

}  // namespace specbound::numerics
