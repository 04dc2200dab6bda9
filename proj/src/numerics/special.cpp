#include "specbound/numerics/special.hpp"

#include <cmath>
#include <numbers>

#include "specbound/error.hpp"

namespace specbound::numerics {

double gamma_half_integer(double x) {
  const double twice = 2.0 * x;
  if (!(x > 0.0) || twice != std::round(twice) || twice > 340.0) {
    throw DomainError("gamma_half_integer: argument must be a positive integer or half-integer");
  }
  // Gamma(x) = (x - 1) Gamma(x - 1), anchored at Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
  const bool integer = std::lround(twice) % 2 == 0;
  double value = integer ? 1.0 : std::sqrt(std::numbers::pi);
  for (double k = integer ? 1.0 : 0.5; k < x; k += 1.0) value *= k;
  return value;
}

double sphere_measure(int n) {
  if (n < 1) throw DomainError("sphere_measure: dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / gamma_half_integer(0.5 * n);
}

double unit_ball_volume(int n) { return sphere_measure(n) / n; }

}  // namespace specbound::numerics
