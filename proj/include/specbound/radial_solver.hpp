#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "specbound/warped_geometry.hpp"

namespace specbound {

/// A radial profile u(r) sampled on 0 = r_0 < r_1 < ... < r_m with u and u' at every node.
///
/// Values are interpolated by the cubic Hermite polynomial through (u, u') on each panel.
/// When second derivatives are supplied the derivative is interpolated the same way from
/// (u', u''); otherwise it is the derivative of the value cubic.
class RadialFunction {
 public:
  RadialFunction(std::vector<double> r, std::vector<double> u, std::vector<double> du,
                 std::vector<double> d2u = {});

  double value(double r) const;
  double derivative(double r) const;

  double r_max() const { return r_.back(); }
  std::size_t size() const { return r_.size(); }
  std::span<const double> radii() const { return r_; }
  std::span<const double> values() const { return u_; }
  std::span<const double> derivatives() const { return du_; }

  /// `r,u,du` with 12 significant digits.
  void write_csv(std::ostream& out) const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  std::vector<double> r_;
  std::vector<double> u_;
  std::vector<double> du_;
  std::vector<double> d2u_;
};

struct DirichletEigenpair {
  WarpingModel model;
  double eigenvalue = 0.0;
  double radius = 0.0;
  RadialFunction eigenfunction;
};

struct IvpOptions {
  double tol = 1e-10;
  double max_step = 0.05;
  bool stop_at_first_zero = false;
};

/// Regular solution of u'' + (n-1)(f'/f) u' + lambda u = 0, u(0) = 1, u'(0) = 0 on [0, r_max].
/// The pole is bridged by the even series through the r^4 term on [0, 1e-3].
RadialFunction solve_eigen_ivp(const WarpingModel& model, double lambda, double r_max,
                               const IvpOptions& options);
RadialFunction solve_eigen_ivp(const WarpingModel& model, double lambda, double r_max,
                               double tol = 1e-10);

/// First sign change of the interpolant, refined by bisection to 1e-12 in r.
std::optional<double> first_zero(const RadialFunction& u);

/// lambda_1(B_R) by bisection on "the regular solution vanishes in (0, R]".
/// `tol` is relative in lambda; the returned value is the largest bracket end for which
/// the solution is still positive on [0, R].
double principal_dirichlet_eigenvalue(const WarpingModel& model, double radius, double tol = 1e-8);

DirichletEigenpair dirichlet_eigenpair(const WarpingModel& model, double radius, double tol = 1e-8);

/// Torsion function of B_R: u(r) = integral_r^R F(s)^{-1} integral_0^s F(t) dt ds, F = f^{n-1}.
RadialFunction solve_torsion(const WarpingModel& model, double radius, double rel_tol = 1e-10);

/// The radius where a strictly decreasing u takes the value t.
double level_radius(const RadialFunction& u, double t);

/// mu(t) = |{u > t}| for a positive, strictly decreasing radial u.
double distribution_function(const RadialFunction& u, const WarpingModel& model, double t,
                             double rel_tol = 1e-10);

/// (omega_{n-1} integral_0^{r_max} |u|^p f^{n-1} dr)^{1/p}.
double lp_norm(const RadialFunction& u, const WarpingModel& model, double p, double r_max,
               double rel_tol = 1e-10);

/// max |u|, refined on the panels around the largest node by the interpolant's critical points.
double sup_norm(const RadialFunction& u);

/// Regular IVP solution on a noncompact model, truncated where the decay exponent
/// sigma(r) = -(log u)'(r) changes by less than 0.1% over one unit of radius.
struct WholeManifoldSolution {
  RadialFunction u;
  double truncation_radius = 0.0;
  double decay_exponent = 0.0;
  bool stabilized = false;
  bool positive = true;
};

WholeManifoldSolution solve_whole_manifold(const WarpingModel& model, double lambda,
                                           double tol = 1e-10);

/// L^p norm over the whole model with the tail beyond the truncation radius extrapolated
/// as an exponential. `divergent` is set when sigma_vol - p sigma >= -1e-3.
struct TailNorm {
  bool divergent = false;
  double value = 0.0;
  double truncation_radius = 0.0;
  double decay_exponent = 0.0;
  double volume_exponent = 0.0;
  double tail_exponent = 0.0;
  double body = 0.0;
  double tail = 0.0;
  /// sigma_vol / sigma: the smallest p for which the measured tail is integrable.
  double measured_p_threshold = 0.0;
};

TailNorm lp_norm_whole_manifold(const WholeManifoldSolution& solution, const WarpingModel& model,
                                double p, double rel_tol = 1e-10);

}  // namespace specbound
