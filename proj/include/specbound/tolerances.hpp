#pragma once

#include <algorithm>

namespace specbound {

/// One global relative tolerance from which every numerical stage derives its own.
/// Quadrature and ODE stages run two orders tighter than the shooting tolerance so that
/// their errors do not limit the eigenvalue search.
struct Tolerances {
  static constexpr double kDefaultGlobal = 1e-8;

  double global = kDefaultGlobal;

  double quadrature() const { return std::clamp(global * 1e-2, 1e-13, 1e-4); }
  double ode() const { return std::clamp(global * 1e-2, 1e-12, 1e-4); }
  double shooting() const { return global; }
};

}  // namespace specbound
