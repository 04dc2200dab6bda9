#include "specbound/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "specbound/error.hpp"
#include "specbound/numerics/format.hpp"
#include "specbound/numerics/interpolation.hpp"
#include "specbound/numerics/ode.hpp"
#include "specbound/numerics/quadrature.hpp"

namespace specbound {

namespace {

constexpr double kSeriesRadius = 1e-3;
constexpr double kLambdaFloor = 1e-6;
constexpr double kLambdaCeiling = 1e6;
constexpr double kZeroResolution = 1e-12;
constexpr double kTailDivergenceMargin = 1e-3;
constexpr double kDecayStabilization = 1e-3;
constexpr double kInitialTruncation = 8.0;
constexpr double kMaxTruncation = 256.0;

double int_pow(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

double ode_tolerance(double tol) { return std::clamp(tol * 1e-2, 1e-12, 1e-6); }

// Integral over [a, b] of g, split at the nodes of u so each panel sees one cubic.
template <class Integrand>
double integrate_over_nodes(const RadialFunction& u, double a, double b, double rel_tol,
                            Integrand&& g) {
  numerics::QuadratureOptions options;
  options.rel_tol = rel_tol;
  const auto r = u.radii();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double lo = std::max(a, r[i]);
    const double hi = std::min(b, r[i + 1]);
    if (hi <= lo) continue;
    total += numerics::integrate(g, lo, hi, options).value;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// RadialFunction

RadialFunction::RadialFunction(std::vector<double> r, std::vector<double> u, std::vector<double> du,
                               std::vector<double> d2u)
    : r_(std::move(r)), u_(std::move(u)), du_(std::move(du)), d2u_(std::move(d2u)) {
  if (r_.size() < 2 || u_.size() != r_.size() || du_.size() != r_.size() ||
      (!d2u_.empty() && d2u_.size() != r_.size())) {
    throw DomainError("RadialFunction: need at least two nodes with matching sample counts");
  }
  if (r_.front() != 0.0) throw DomainError("RadialFunction: grid must start at r = 0");
  for (std::size_t i = 1; i < r_.size(); ++i) {
    if (!(r_[i] > r_[i - 1])) throw DomainError("RadialFunction: grid must be strictly increasing");
  }
  if (std::abs(du_.front()) > 1e-12 * std::max(1.0, std::abs(u_.front()))) {
    throw PreconditionError("RadialFunction: u'(0) must vanish (regularity at the pole)");
  }
}

double RadialFunction::value(double r) const {
  if (!(r >= 0.0) || r > r_max() * (1.0 + 1e-14)) {
    throw DomainError("RadialFunction::value: radius outside the sampled range");
  }
  const std::size_t i = numerics::locate_panel(r_, r);
  return numerics::hermite_value(r_[i], r_[i + 1], u_[i], u_[i + 1], du_[i], du_[i + 1], r);
}

double RadialFunction::derivative(double r) const {
  if (!(r >= 0.0) || r > r_max() * (1.0 + 1e-14)) {
    throw DomainError("RadialFunction::derivative: radius outside the sampled range");
  }
  const std::size_t i = numerics::locate_panel(r_, r);
  if (!d2u_.empty()) {
    return numerics::hermite_value(r_[i], r_[i + 1], du_[i], du_[i + 1], d2u_[i], d2u_[i + 1], r);
  }
  return numerics::hermite_derivative(r_[i], r_[i + 1], u_[i], u_[i + 1], du_[i], du_[i + 1], r);
}

void RadialFunction::write_csv(std::ostream& out) const {
  out << "r,u,du\n";
  for (std::size_t i = 0; i < r_.size(); ++i) {
    out << numerics::format_number(r_[i]) << ',' << numerics::format_number(u_[i]) << ','
        << numerics::format_number(du_[i]) << '\n';
  }
}

void RadialFunction::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(out);
}

// ---------------------------------------------------------------------------
// Eigenvalue problem

RadialFunction solve_eigen_ivp(const WarpingModel& model, double lambda, double r_max,
                               const IvpOptions& options) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("solve_eigen_ivp: lambda must be positive");
  }
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw DomainError("solve_eigen_ivp: r_max must be positive");
  }
  const int n = model.dimension();
  const double nm1 = n - 1.0;

  // f = r + a r^3 + O(r^5) with a = -K(0)/6 gives u = 1 + c2 r^2 + c4 r^4 + O(r^6).
  const double a = -model.sectional_curvature(0.0) / 6.0;
  const double c2 = -lambda / (2.0 * n);
  const double c4 = lambda * (lambda + 4.0 * a * nm1) / (8.0 * n * (n + 2.0));
  const double rs = std::min(kSeriesRadius, 0.5 * r_max);
  const double us = 1.0 + c2 * rs * rs + c4 * rs * rs * rs * rs;
  const double dus = 2.0 * c2 * rs + 4.0 * c4 * rs * rs * rs;

  auto second = [&](double r, double u, double du) {
    return -nm1 * model.log_derivative(r) * du - lambda * u;
  };

  std::vector<double> r{0.0, rs};
  std::vector<double> u{1.0, us};
  std::vector<double> du{0.0, dus};
  std::vector<double> d2u{-lambda / n, second(rs, us, dus)};

  numerics::OdeOptions ode;
  ode.rel_tol = options.tol;
  ode.max_step = options.max_step;
  ode.initial_step = std::min(1e-3, options.max_step);
  auto rhs = [&](double t, const numerics::OdeState<2>& y) {
    return numerics::OdeState<2>{y[1], second(t, y[0], y[1])};
  };
  auto observer = [&](double t, const numerics::OdeState<2>& y, const numerics::OdeState<2>& dy) {
    if (t == rs) return true;
    r.push_back(t);
    u.push_back(y[0]);
    du.push_back(y[1]);
    d2u.push_back(dy[1]);
    return !(options.stop_at_first_zero && y[0] <= 0.0);
  };
  numerics::integrate_dopri5<2>(rhs, rs, {us, dus}, r_max, ode, observer);
  return RadialFunction(std::move(r), std::move(u), std::move(du), std::move(d2u));
}

RadialFunction solve_eigen_ivp(const WarpingModel& model, double lambda, double r_max, double tol) {
  IvpOptions options;
  options.tol = tol;
  return solve_eigen_ivp(model, lambda, r_max, options);
}

std::optional<double> first_zero(const RadialFunction& u) {
  const auto r = u.radii();
  const auto v = u.values();
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (v[i] == 0.0) return r[i];
    if (v[i] * v[i + 1] > 0.0) continue;
    double lo = r[i];
    double hi = r[i + 1];
    const bool positive_left = v[i] > 0.0;
    while (hi - lo > kZeroResolution) {
      const double mid = 0.5 * (lo + hi);
      if ((u.value(mid) > 0.0) == positive_left) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
  if (v.back() == 0.0) return r.back();
  return std::nullopt;
}

namespace {

bool vanishes_within(const WarpingModel& model, double lambda, double radius, double ode_tol) {
  IvpOptions options;
  options.tol = ode_tol;
  options.stop_at_first_zero = true;
  const RadialFunction u = solve_eigen_ivp(model, lambda, radius, options);
  const auto zero = first_zero(u);
  return zero.has_value() && *zero <= radius;
}

}  // namespace

double principal_dirichlet_eigenvalue(const WarpingModel& model, double radius, double tol) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("principal_dirichlet_eigenvalue: radius must be positive");
  }
  if (!(tol > 0.0)) throw DomainError("principal_dirichlet_eigenvalue: tolerance must be positive");
  const double ode_tol = ode_tolerance(tol);

  // Start below the Euclidean eigenvalue j^2/R^2 (j > sqrt(n)) and walk to a bracket.
  double lo = std::max(kLambdaFloor, model.dimension() / (radius * radius));
  while (vanishes_within(model, lo, radius, ode_tol)) {
    if (lo <= kLambdaFloor) {
      throw SearchError("principal_dirichlet_eigenvalue: solution vanishes even at the lambda floor");
    }
    lo = std::max(kLambdaFloor, 0.5 * lo);
  }
  double hi = 2.0 * lo;
  while (!vanishes_within(model, hi, radius, ode_tol)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kLambdaCeiling) {
      std::ostringstream msg;
      msg << "principal_dirichlet_eigenvalue: no sign change below lambda = " << kLambdaCeiling
          << " for R = " << radius;
      throw SearchError(msg.str());
    }
  }
  while (hi - lo > 0.25 * tol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (vanishes_within(model, mid, radius, ode_tol)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return lo;
}

DirichletEigenpair dirichlet_eigenpair(const WarpingModel& model, double radius, double tol) {
  const double lambda = principal_dirichlet_eigenvalue(model, radius, tol);
  RadialFunction u = solve_eigen_ivp(model, lambda, radius, ode_tolerance(tol));
  return DirichletEigenpair{model, lambda, radius, std::move(u)};
}

// ---------------------------------------------------------------------------
// Torsion problem

RadialFunction solve_torsion(const WarpingModel& model, double radius, double rel_tol) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("solve_torsion: radius must be positive");
  }
  const int n = model.dimension();
  const int power = n - 1;
  const int panels = std::clamp(static_cast<int>(std::ceil(512.0 * radius)), 512, 8192);

  std::vector<double> r(panels + 1);
  for (int i = 0; i <= panels; ++i) r[i] = radius * i / panels;
  r.back() = radius;

  numerics::QuadratureOptions options;
  options.rel_tol = rel_tol;
  auto F = [&](double s) { return int_pow(model.warping(s).f, power); };

  // P_i = integral_0^{r_i} F.
  std::vector<double> P(panels + 1, 0.0);
  for (int i = 0; i < panels; ++i) {
    P[i + 1] = P[i] + numerics::integrate(F, r[i], r[i + 1], options).value;
  }

  // u' = -P(s)/F(s) = -|B_s| / |dB_s|.
  std::vector<double> increments(panels, 0.0);
  for (int i = 0; i < panels; ++i) {
    const double left = r[i];
    const double base = P[i];
    auto G = [&](double s) {
      const double inner = base + numerics::integrate(F, left, s, options).value;
      return inner / F(s);
    };
    increments[i] = numerics::integrate(G, r[i], r[i + 1], options).value;
  }

  std::vector<double> u(panels + 1, 0.0);
  for (int i = panels - 1; i >= 0; --i) u[i] = u[i + 1] + increments[i];

  std::vector<double> du(panels + 1, 0.0);
  std::vector<double> d2u(panels + 1, -1.0 / n);
  for (int i = 1; i <= panels; ++i) {
    du[i] = -P[i] / F(r[i]);
    d2u[i] = -1.0 - (n - 1.0) * model.log_derivative(r[i]) * du[i];
  }
  return RadialFunction(std::move(r), std::move(u), std::move(du), std::move(d2u));
}

double level_radius(const RadialFunction& u, double t) {
  const auto r = u.radii();
  const auto v = u.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!(v[i + 1] < v[i])) {
      throw PreconditionError("level_radius: u must be strictly decreasing in r");
    }
  }
  if (t >= v.front()) return 0.0;
  if (t <= v.back()) return r.back();
  // First node strictly below t.
  const auto it = std::upper_bound(v.begin(), v.end(), t, std::greater<>());
  const std::size_t i = static_cast<std::size_t>(it - v.begin()) - 1;
  double lo = r[i];
  double hi = r[i + 1];
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (u.value(mid) > t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double distribution_function(const RadialFunction& u, const WarpingModel& model, double t,
                             double rel_tol) {
  if (!(t >= 0.0)) throw DomainError("distribution_function: level must be nonnegative");
  const double radius = level_radius(u, t);
  if (t >= u.values().front()) return 0.0;
  return ball_volume(model, radius, rel_tol);
}

// ---------------------------------------------------------------------------
// Norms

double lp_norm(const RadialFunction& u, const WarpingModel& model, double p, double r_max,
               double rel_tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp_norm: p must be >= 1");
  if (!(r_max > 0.0) || r_max > u.r_max() * (1.0 + 1e-12)) {
    throw DomainError("lp_norm: r_max outside the sampled range");
  }
  const int power = model.dimension() - 1;
  const double integral = integrate_over_nodes(u, 0.0, std::min(r_max, u.r_max()), rel_tol,
                                               [&](double r) {
                                                 return std::pow(std::abs(u.value(r)), p) *
                                                        int_pow(model.warping(r).f, power);
                                               });
  return std::pow(model.sphere_measure() * integral, 1.0 / p);
}

double sup_norm(const RadialFunction& u) {
  const auto r = u.radii();
  const auto v = u.values();
  const auto d = u.derivatives();
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  double result = std::abs(v[best]);
  const std::size_t first = best == 0 ? 0 : best - 1;
  const std::size_t last = std::min(best + 1, v.size() - 1);
  for (std::size_t i = first; i < last; ++i) {
    for (double x : numerics::hermite_critical_points(r[i], r[i + 1], v[i], v[i + 1], d[i], d[i + 1])) {
      result = std::max(result, std::abs(numerics::hermite_value(r[i], r[i + 1], v[i], v[i + 1],
                                                                 d[i], d[i + 1], x)));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Whole-manifold solutions

WholeManifoldSolution solve_whole_manifold(const WarpingModel& model, double lambda, double tol) {
  const int n = model.dimension();
  double r_end = kInitialTruncation;
  for (;;) {
    RadialFunction u = solve_eigen_ivp(model, lambda, r_end, tol);
    if (first_zero(u)) {
      WholeManifoldSolution out{std::move(u), r_end, 0.0, false, false};
      return out;
    }
    const double sigma_end = -u.derivative(r_end) / u.value(r_end);
    const double sigma_prev = -u.derivative(r_end - 1.0) / u.value(r_end - 1.0);
    const bool stable = std::abs(sigma_end - sigma_prev) < kDecayStabilization * std::abs(sigma_end);
    // Keep f^{n-1} far from overflow.
    const double next = 2.0 * r_end;
    const bool room = next <= kMaxTruncation &&
                      (n - 1) * std::log(std::max(1.0, model.warping(next).f)) < 600.0;
    if (stable || !room) {
      return WholeManifoldSolution{std::move(u), r_end, sigma_end, stable, true};
    }
    r_end = next;
  }
}

TailNorm lp_norm_whole_manifold(const WholeManifoldSolution& solution, const WarpingModel& model,
                                double p, double rel_tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("lp_norm: p must be >= 1");
  if (!solution.positive) {
    throw PreconditionError("lp_norm_whole_manifold: solution changes sign (lambda above lambda_1)");
  }
  TailNorm out;
  const double r_max = solution.truncation_radius;
  out.truncation_radius = r_max;
  out.decay_exponent = solution.decay_exponent;
  out.volume_exponent = (model.dimension() - 1) * model.log_derivative(r_max);
  out.tail_exponent = out.volume_exponent - p * out.decay_exponent;
  out.measured_p_threshold =
      out.decay_exponent > 0.0 ? out.volume_exponent / out.decay_exponent
                               : std::numeric_limits<double>::infinity();
  if (out.tail_exponent >= -kTailDivergenceMargin) {
    out.divergent = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  const int power = model.dimension() - 1;
  out.body = model.sphere_measure() *
             integrate_over_nodes(solution.u, 0.0, r_max, rel_tol, [&](double r) {
               return std::pow(std::abs(solution.u.value(r)), p) *
                      int_pow(model.warping(r).f, power);
             });
  out.tail = model.sphere_measure() * std::pow(std::abs(solution.u.value(r_max)), p) *
             int_pow(model.warping(r_max).f, power) / (-out.tail_exponent);
  out.value = std::pow(out.body + out.tail, 1.0 / p);
  return out;
}

}  // namespace specbound
