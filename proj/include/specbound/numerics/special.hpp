#pragma once

namespace specbound::numerics {

/// Gamma function restricted to positive integers and half-integers.
/// Throws DomainError for any other argument.
double gamma_half_integer(double x);

/// Total measure of the unit (n-1)-sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_measure(int n);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace specbound::numerics
