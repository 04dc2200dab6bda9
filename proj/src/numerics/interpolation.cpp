#include "specbound/numerics/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "specbound/error.hpp"

namespace specbound::numerics {

double hermite_value(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

double hermite_derivative(double x0, double x1, double y0, double y1, double d0, double d1,
                          double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s;
  const double dh00 = (6.0 * s2 - 6.0 * s) / h;
  const double dh10 = 3.0 * s2 - 4.0 * s + 1.0;
  const double dh01 = (-6.0 * s2 + 6.0 * s) / h;
  const double dh11 = 3.0 * s2 - 2.0 * s;
  return dh00 * y0 + dh10 * d0 + dh01 * y1 + dh11 * d1;
}

std::vector<double> hermite_critical_points(double x0, double x1, double y0, double y1, double d0,
                                            double d1) {
  // dp/dx = qa s^2 + qb s + c with s = (x - x0) / h.
  const double h = x1 - x0;
  const double dy = y1 - y0;
  const double qa = 3.0 * (2.0 * (y0 - y1) / h + d0 + d1);
  const double qb = 2.0 * (3.0 * dy / h - 2.0 * d0 - d1);
  const double c = d0;
  std::vector<double> roots;
  auto push = [&](double s) {
    if (s > 0.0 && s < 1.0) roots.push_back(x0 + s * h);
  };
  if (std::abs(qa) < 1e-300) {
    if (std::abs(qb) > 1e-300) push(-c / qb);
    return roots;
  }
  const double disc = qb * qb - 4.0 * qa * c;
  if (disc < 0.0) return roots;
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (qb + std::copysign(sq, qb));
  if (q != 0.0) {
    push(q / qa);
    push(c / q);
  } else {
    push(0.0);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::size_t locate_panel(std::span<const double> x, double v) {
  if (x.size() < 2) throw DomainError("locate_panel: need at least two nodes");
  auto it = std::upper_bound(x.begin(), x.end(), v);
  std::size_t idx = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  return std::min(idx, x.size() - 2);
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw DomainError("MonotoneCubic: need at least two (x, y) samples of equal length");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw DomainError("MonotoneCubic: abscissae must be strictly increasing");
  }
  std::vector<double> h(n - 1);
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    delta[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
    return;
  }
  // Second-order slopes on a non-uniform grid.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d_[i] = (h[i] * delta[i - 1] + h[i - 1] * delta[i]) / (h[i - 1] + h[i]);
  }
  d_[0] = ((2.0 * h[0] + h[1]) * delta[0] - h[0] * delta[1]) / (h[0] + h[1]);
  d_[n - 1] = ((2.0 * h[n - 2] + h[n - 3]) * delta[n - 2] - h[n - 2] * delta[n - 3]) /
              (h[n - 2] + h[n - 3]);

  // Local extrema get zero slope; end slopes must agree in sign with their secant.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) d_[i] = 0.0;
  }
  if (d_[0] * delta[0] < 0.0) d_[0] = 0.0;
  if (d_[n - 1] * delta[n - 2] < 0.0) d_[n - 1] = 0.0;
  // Fritsch-Carlson circle constraint alpha^2 + beta^2 <= 9.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      d_[i] = 0.0;
      d_[i + 1] = 0.0;
      continue;
    }
    const double alpha = d_[i] / delta[i];
    const double beta = d_[i + 1] / delta[i];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d_[i] = tau * alpha * delta[i];
      d_[i + 1] = tau * beta * delta[i];
    }
  }
}

double MonotoneCubic::operator()(double v) const {
  const std::size_t i = locate_panel(x_, v);
  return hermite_value(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], v);
}

double MonotoneCubic::derivative(double v) const {
  const std::size_t i = locate_panel(x_, v);
  return hermite_derivative(x_[i], x_[i + 1], y_[i], y_[i + 1], d_[i], d_[i + 1], v);
}

}  // namespace specbound::numerics
