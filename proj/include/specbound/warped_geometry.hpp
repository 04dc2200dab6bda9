#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace specbound {

enum class ModelKind { euclidean, hyperbolic, jacobi };

/// Radial sectional curvature K(r) of a Jacobi-type model. Must be <= 0.
using CurvatureFunction = std::function<double(double)>;

struct Warping {
  double f = 0.0;
  double f_prime = 0.0;
};

struct BallGeometry {
  double radius = 0.0;
  double volume = 0.0;
  double boundary_area = 0.0;
};

/// Rotationally symmetric model manifold dr^2 + f(r)^2 dTheta^2 of dimension n.
///
/// Euclidean and hyperbolic warpings are closed forms. A Jacobi model integrates
/// f'' = -K(r) f, f(0) = 0, f'(0) = 1 lazily: the node table grows in fixed chunks the
/// first time a larger radius is requested, so values never depend on query order.
/// Copies share that table; growth is synchronized and reads may run concurrently.
class WarpingModel {
 public:
  static constexpr double kDefaultGridResolution = 0.01;
  static constexpr double kDefaultJacobiTolerance = 1e-10;

  static WarpingModel euclidean(int dimension);
  static WarpingModel hyperbolic(int dimension, double curvature);
  static WarpingModel jacobi(int dimension, CurvatureFunction curvature,
                             double grid_resolution = kDefaultGridResolution,
                             double rel_tol = kDefaultJacobiTolerance);

  int dimension() const { return dimension_; }
  ModelKind kind() const { return kind_; }

  /// kappa for hyperbolic models, 0 otherwise.
  double curvature_magnitude() const { return kappa_; }

  /// Radial sectional curvature K(r).
  double sectional_curvature(double r) const;

  Warping warping(double r) const;

  /// f'(r) / f(r) for r > 0. Throws InvalidModelError if f(r) <= 0.
  double log_derivative(double r) const;

  /// omega_{n-1}, the measure of the unit (n-1)-sphere.
  double sphere_measure() const { return sphere_measure_; }

  /// Bottom of the L^2 spectrum when known in closed form: 0 for R^n,
  /// (n-1)^2 kappa / 4 for hyperbolic space; empty for Jacobi models.
  std::optional<double> bottom_of_spectrum() const;

  std::string describe() const;

 private:
  struct JacobiTable;

  WarpingModel(int dimension, ModelKind kind, double kappa);

  int dimension_ = 2;
  ModelKind kind_ = ModelKind::euclidean;
  double kappa_ = 0.0;
  double sphere_measure_ = 0.0;
  std::shared_ptr<JacobiTable> jacobi_;
};

/// (f(r), f'(r)); r must be >= 0.
Warping warping_eval(const WarpingModel& model, double r);

/// |B_R| = omega_{n-1} * integral_0^R f^{n-1} by adaptive quadrature.
double ball_volume(const WarpingModel& model, double radius, double rel_tol = 1e-10);

/// |dB_R| = omega_{n-1} f(R)^{n-1}.
double ball_area(const WarpingModel& model, double radius);

BallGeometry ball_geometry(const WarpingModel& model, double radius, double rel_tol = 1e-10);

/// Inverse of ball_volume: the radius R with |B_R| = volume.
double ball_radius_for_volume(const WarpingModel& model, double volume, double rel_tol = 1e-10);

}  // namespace specbound
