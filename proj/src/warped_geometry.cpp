#include "specbound/warped_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <vector>

#include "specbound/error.hpp"
#include "specbound/numerics/interpolation.hpp"
#include "specbound/numerics/ode.hpp"
#include "specbound/numerics/quadrature.hpp"
#include "specbound/numerics/special.hpp"

namespace specbound {

namespace {

constexpr double kJacobiChunk = 4.0;
constexpr double kMaxJacobiRadius = 1e4;

void require_radius(double r, const char* where) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    std::ostringstream msg;
    msg << where << ": radius must be a finite nonnegative number (got " << r << ")";
    throw DomainError(msg.str());
  }
}

double int_pow(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

struct WarpingModel::JacobiTable {
  CurvatureFunction curvature;
  double max_step;
  double rel_tol;

  mutable std::shared_mutex mutex;
  std::vector<double> r{0.0};
  std::vector<double> f{0.0};
  std::vector<double> fp{1.0};
  std::vector<double> fpp{0.0};

  double reach() const { return r.back(); }

  // Caller holds the unique lock.
  void extend_chunk() {
    const double start = r.back();
    const double stop = start + kJacobiChunk;
    numerics::OdeOptions options;
    options.rel_tol = rel_tol;
    options.max_step = max_step;
    options.initial_step = max_step * 0.25;
    auto rhs = [this](double t, const numerics::OdeState<2>& y) {
      return numerics::OdeState<2>{y[1], -curvature(t) * y[0]};
    };
    auto observer = [this, start](double t, const numerics::OdeState<2>& y,
                                  const numerics::OdeState<2>& dy) {
      if (t == start) return true;
      const double k = curvature(t);
      if (!(k <= 0.0)) {
        std::ostringstream msg;
        msg << "jacobi model: positive curvature K(" << t << ") = " << k;
        throw InvalidModelError(msg.str());
      }
      if (!(y[0] > 0.0) || !(y[1] >= 1.0 - 1e-8) || !std::isfinite(y[0])) {
        std::ostringstream msg;
        msg << "jacobi model: warping violates f > 0, f' >= 1 at r = " << t << " (f = " << y[0]
            << ", f' = " << y[1] << ")";
        throw InvalidModelError(msg.str());
      }
      r.push_back(t);
      f.push_back(y[0]);
      fp.push_back(y[1]);
      fpp.push_back(dy[1]);
      return true;
    };
    numerics::integrate_dopri5<2>(rhs, start, {f.back(), fp.back()}, stop, options, observer);
  }
};

WarpingModel::WarpingModel(int dimension, ModelKind kind, double kappa)
    : dimension_(dimension), kind_(kind), kappa_(kappa) {
  if (dimension < 2) throw DomainError("WarpingModel: dimension must be >= 2");
  sphere_measure_ = numerics::sphere_measure(dimension);
}

WarpingModel WarpingModel::euclidean(int dimension) {
  return WarpingModel(dimension, ModelKind::euclidean, 0.0);
}

WarpingModel WarpingModel::hyperbolic(int dimension, double curvature) {
  if (!(curvature > 0.0) || !std::isfinite(curvature)) {
    throw DomainError("WarpingModel::hyperbolic: curvature magnitude must be positive");
  }
  return WarpingModel(dimension, ModelKind::hyperbolic, curvature);
}

WarpingModel WarpingModel::jacobi(int dimension, CurvatureFunction curvature,
                                  double grid_resolution, double rel_tol) {
  if (!curvature) throw DomainError("WarpingModel::jacobi: curvature function is empty");
  if (!(grid_resolution > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("WarpingModel::jacobi: grid resolution and tolerance must be positive");
  }
  WarpingModel model(dimension, ModelKind::jacobi, 0.0);
  auto table = std::make_shared<JacobiTable>();
  table->curvature = std::move(curvature);
  table->max_step = grid_resolution;
  table->rel_tol = rel_tol;
  if (table->curvature(0.0) > 0.0) {
    throw InvalidModelError("jacobi model: positive curvature at the pole");
  }
  model.jacobi_ = std::move(table);
  return model;
}

double WarpingModel::sectional_curvature(double r) const {
  switch (kind_) {
    case ModelKind::euclidean:
      return 0.0;
    case ModelKind::hyperbolic:
      return -kappa_;
    case ModelKind::jacobi:
      return jacobi_->curvature(r);
  }
  return 0.0;
}

Warping WarpingModel::warping(double r) const {
  require_radius(r, "warping_eval");
  switch (kind_) {
    case ModelKind::euclidean:
      return {r, 1.0};
    case ModelKind::hyperbolic: {
      const double s = std::sqrt(kappa_);
      return {std::sinh(s * r) / s, std::cosh(s * r)};
    }
    case ModelKind::jacobi:
      break;
  }

  JacobiTable& table = *jacobi_;
  {
    std::shared_lock lock(table.mutex);
    if (r <= table.reach() && table.r.size() >= 2) {
      const std::size_t i = numerics::locate_panel(table.r, r);
      const double r0 = table.r[i], r1 = table.r[i + 1];
      return {numerics::hermite_value(r0, r1, table.f[i], table.f[i + 1], table.fp[i],
                                      table.fp[i + 1], r),
              numerics::hermite_value(r0, r1, table.fp[i], table.fp[i + 1], table.fpp[i],
                                      table.fpp[i + 1], r)};
    }
  }
  if (r > kMaxJacobiRadius) throw DomainError("warping_eval: radius beyond supported range");
  {
    std::unique_lock lock(table.mutex);
    while (table.reach() < r || table.r.size() < 2) table.extend_chunk();
  }
  return warping(r);
}

double WarpingModel::log_derivative(double r) const {
  if (!(r > 0.0)) throw DomainError("log_derivative: radius must be positive");
  if (kind_ == ModelKind::euclidean) return 1.0 / r;
  if (kind_ == ModelKind::hyperbolic) {
    const double s = std::sqrt(kappa_);
    return s / std::tanh(s * r);
  }
  const Warping w = warping(r);
  if (!(w.f > 0.0)) {
    std::ostringstream msg;
    msg << "log_derivative: warping f(" << r << ") = " << w.f << " is not positive";
    throw InvalidModelError(msg.str());
  }
  return w.f_prime / w.f;
}

std::optional<double> WarpingModel::bottom_of_spectrum() const {
  switch (kind_) {
    case ModelKind::euclidean:
      return 0.0;
    case ModelKind::hyperbolic:
      return (dimension_ - 1) * (dimension_ - 1) * kappa_ / 4.0;
    case ModelKind::jacobi:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string WarpingModel::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case ModelKind::euclidean:
      out << "euclidean(n=" << dimension_ << ")";
      break;
    case ModelKind::hyperbolic:
      out << "hyperbolic(n=" << dimension_ << ",kappa=" << kappa_ << ")";
      break;
    case ModelKind::jacobi:
      out << "jacobi(n=" << dimension_ << ")";
      break;
  }
  return out.str();
}

Warping warping_eval(const WarpingModel& model, double r) { return model.warping(r); }

double ball_volume(const WarpingModel& model, double radius, double rel_tol) {
  require_radius(radius, "ball_volume");
  if (radius == 0.0) return 0.0;
  const int power = model.dimension() - 1;
  numerics::QuadratureOptions options;
  options.rel_tol = rel_tol;
  const auto result = numerics::integrate(
      [&](double t) { return int_pow(model.warping(t).f, power); }, 0.0, radius, options);
  return model.sphere_measure() * result.value;
}

double ball_area(const WarpingModel& model, double radius) {
  require_radius(radius, "ball_area");
  return model.sphere_measure() * int_pow(model.warping(radius).f, model.dimension() - 1);
}

BallGeometry ball_geometry(const WarpingModel& model, double radius, double rel_tol) {
  return {radius, ball_volume(model, radius, rel_tol), ball_area(model, radius)};
}

double ball_radius_for_volume(const WarpingModel& model, double volume, double rel_tol) {
  if (!(volume >= 0.0) || !std::isfinite(volume)) {
    throw DomainError("ball_radius_for_volume: volume must be finite and nonnegative");
  }
  if (volume == 0.0) return 0.0;
  const int n = model.dimension();

  // K <= 0 makes every ball at least as large as its Euclidean counterpart.
  double lo = 0.0;
  double hi = std::pow(volume / numerics::unit_ball_volume(n), 1.0 / n);
  while (ball_volume(model, hi, rel_tol) < volume) {
    lo = hi;
    hi *= 2.0;
    if (hi > kMaxJacobiRadius) throw RangeError("ball_radius_for_volume: volume out of reach");
  }

  double radius = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = ball_volume(model, radius, rel_tol) - volume;
    if (std::abs(residual) <= 1e-13 * volume) return radius;
    if (residual > 0.0) {
      hi = radius;
    } else {
      lo = radius;
    }
    if (hi - lo <= 4e-16 * hi) return 0.5 * (lo + hi);
    double next = radius - residual / ball_area(model, radius);
    if (!(next > lo && next < hi) || iter > 60) next = 0.5 * (lo + hi);
    if (next == radius) return radius;
    radius = next;
  }
  throw NumericError("ball_radius_for_volume: no convergence");
}

}  // namespace specbound
