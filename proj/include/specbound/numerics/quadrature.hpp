#pragma once

#include <functional>

namespace specbound::numerics {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_panels = 20000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/// One 15-point Gauss-Kronrod panel; `error` receives |K15 - G7|.
double gauss_kronrod15(const std::function<double(double)>& f, double a, double b, double& error);

/// Globally adaptive bisection of [a, b] using Gauss-Kronrod 7/15 panels.
/// Throws NumericError when the panel budget is exhausted before the tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace specbound::numerics
