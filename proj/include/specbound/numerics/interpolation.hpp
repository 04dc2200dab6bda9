#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specbound::numerics {

/// Cubic Hermite value on [x0, x1] from end values and end slopes.
double hermite_value(double x0, double x1, double y0, double y1, double d0, double d1, double x);

/// Derivative of the same cubic.
double hermite_derivative(double x0, double x1, double y0, double y1, double d0, double d1,
                          double x);

/// Interior critical points (0, 1 or 2) of the cubic on (x0, x1).
std::vector<double> hermite_critical_points(double x0, double x1, double y0, double y1, double d0,
                                            double d1);

/// Index i with x[i] <= v <= x[i+1] on a strictly increasing grid (clamped to the end panels).
std::size_t locate_panel(std::span<const double> x, double v);

/// Shape-preserving piecewise cubic (Fritsch-Carlson): second-order three-point slopes,
/// limited so monotone data stays monotone between nodes.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double v) const;
  double derivative(double v) const;

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::span<const double> nodes() const { return x_; }
  std::span<const double> values() const { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace specbound::numerics
