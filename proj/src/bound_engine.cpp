#include "specbound/bound_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "specbound/error.hpp"
#include "specbound/numerics/quadrature.hpp"

namespace specbound {

namespace {

double int_pow(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

void require_p(double p, const char* where) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << where << ": p must be a finite number >= 2 (got " << p << ")";
    throw DomainError(msg.str());
  }
}

// omega_{n-1} integral_0^R g(r) f(r)^{n-1} dr, panelwise over the nodes of u.
template <class G>
double radial_integral(const RadialFunction& u, const WarpingModel& model, double rel_tol, G&& g) {
  numerics::QuadratureOptions options;
  options.rel_tol = rel_tol;
  const int power = model.dimension() - 1;
  auto integrand = [&](double r) { return g(r) * int_pow(model.warping(r).f, power); };
  const auto r = u.radii();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    total += numerics::integrate(integrand, r[i], r[i + 1], options).value;
  }
  return model.sphere_measure() * total;
}

}  // namespace

double eigen_bound_constant(double lambda, double p, const AifEvaluator& aif) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("eigen_bound_constant: lambda must be positive");
  }
  require_p(p, "eigen_bound_constant");
  return 2.0 * std::pow(aif.inverse(0.5 / lambda), -1.0 / p);
}

double hadamard_constant(double lambda, double p, int n, double D) {
  if (!(lambda > 0.0) || !(D > 0.0) || n < 2) {
    throw DomainError("hadamard_constant: lambda, D must be positive and n >= 2");
  }
  require_p(p, "hadamard_constant");
  return 2.0 * std::pow(n * lambda, n / (2.0 * p)) / std::pow(D, n / p);
}

double admissible_p_threshold(double lambda, double lambda1) {
  if (!(lambda > 0.0) || !(lambda1 > 0.0)) {
    throw DomainError("admissible_p_threshold: lambda and lambda1 must be positive");
  }
  if (lambda > lambda1) throw DomainError("admissible_p_threshold: lambda exceeds lambda1");
  if (lambda == lambda1) return std::numeric_limits<double>::infinity();
  return 2.0 / std::sqrt(1.0 - lambda / lambda1);
}

VerificationReport make_report(std::string scenario, std::string check, Orientation orientation,
                               double lhs, double rhs, double tolerance) {
  VerificationReport r;
  r.scenario = std::move(scenario);
  r.check = std::move(check);
  r.orientation = orientation;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = slack_ratio(orientation, lhs, rhs);
  bool holds = false;
  if (orientation == Orientation::equal) {
    holds = std::abs(lhs - rhs) <= tolerance * std::abs(rhs);
  } else {
    holds = r.slack >= 1.0 - tolerance;
  }
  if (std::isnan(lhs) || std::isnan(rhs)) holds = false;
  r.status = holds ? CheckStatus::satisfied : CheckStatus::violated;
  r.add("status", to_string(r.status));
  r.add("orientation", to_string(orientation));
  return r;
}

VerificationReport torsion_bound_check(const WarpingModel& model, double radius,
                                       const AifEvaluator& aif, const Tolerances& tol) {
  const RadialFunction u = solve_torsion(model, radius, tol.quadrature());
  const double volume = ball_volume(model, radius, tol.quadrature());
  VerificationReport r = make_report("", "torsion_bound", Orientation::at_most, sup_norm(u),
                                     aif(volume));
  r.add("model", model.describe());
  r.add("profile", aif.profile().describe());
  r.add("radius", radius);
  r.add("volume", volume);
  r.add("quadrature_tol", tol.quadrature());
  return r;
}

VerificationReport lp_lower_bound_check(const DirichletEigenpair& pair, double gamma, double p,
                                        const AifEvaluator& aif, const Tolerances& tol) {
  require_p(p, "lp_lower_bound_check");
  const RadialFunction& w = pair.eigenfunction;
  const double sup = sup_norm(w);
  if (!(gamma >= 0.0) || gamma >= sup) {
    throw PreconditionError("lp_lower_bound_check: gamma must lie in [0, ||w||_inf)");
  }
  const double norm = lp_norm(w, pair.model, p, pair.radius, tol.quadrature());
  const double argument = (sup - gamma) / (2.0 * pair.eigenvalue * sup);
  const double rhs = std::pow(0.5 * (sup + gamma), p) * aif.inverse(argument);
  VerificationReport r =
      make_report("", "lp_lower_bound", Orientation::at_least, std::pow(norm, p), rhs);
  r.add("model", pair.model.describe());
  r.add("profile", aif.profile().describe());
  r.add("radius", pair.radius);
  r.add("lambda", pair.eigenvalue);
  r.add("p", p);
  r.add("gamma", gamma);
  r.add("sup_norm", sup);
  return r;
}

VerificationReport energy_identity_check(const DirichletEigenpair& pair, const Tolerances& tol) {
  const RadialFunction& u = pair.eigenfunction;
  if (sup_norm(u) == 0.0) throw PreconditionError("energy_identity_check: u vanishes identically");
  const double q = tol.quadrature();
  const double gradient = radial_integral(u, pair.model, q, [&](double r) {
    const double d = u.derivative(r);
    return d * d;
  });
  const double mass = radial_integral(u, pair.model, q, [&](double r) {
    const double v = u.value(r);
    return v * v;
  });
  VerificationReport r = make_report("", "energy_identity", Orientation::equal, gradient,
                                     pair.eigenvalue * mass, kEnergyTolerance);
  r.add("model", pair.model.describe());
  r.add("radius", pair.radius);
  r.add("lambda", pair.eigenvalue);
  r.add("relative_gap", std::abs(gradient - pair.eigenvalue * mass) / (pair.eigenvalue * mass));
  return r;
}

VerificationReport coarea_chain_check(const WarpingModel& model, double radius,
                                      const AifEvaluator& aif, int levels, const Tolerances& tol) {
  if (levels < 1) throw DomainError("coarea_chain_check: need at least one level");
  const double q = tol.quadrature();
  const RadialFunction u = solve_torsion(model, radius, q);
  const double top = u.value(0.0);
  const double dt = 1e-3 * top;
  auto chain = [&](double t) { return aif(distribution_function(u, model, t, q)); };

  double lowest = std::numeric_limits<double>::infinity();
  double highest = -std::numeric_limits<double>::infinity();
  for (int j = 1; j <= levels; ++j) {
    const double t = top * j / (levels + 1.0);
    const double quotient = (chain(t - dt) - chain(t + dt)) / (2.0 * dt);
    lowest = std::min(lowest, quotient);
    highest = std::max(highest, quotient);
  }
  VerificationReport r = make_report("", "coarea_chain", Orientation::at_least, lowest, 1.0);
  r.add("model", model.describe());
  r.add("profile", aif.profile().describe());
  r.add("radius", radius);
  r.add("levels", static_cast<double>(levels));
  r.add("step", dt);
  r.add("max_quotient", highest);
  return r;
}

namespace {

VerificationReport verify_ball(const BoundScenario& s, double radius) {
  const DirichletEigenpair pair = dirichlet_eigenpair(s.model, radius, s.tol.shooting());
  const double sup = sup_norm(pair.eigenfunction);
  const double norm = lp_norm(pair.eigenfunction, s.model, s.p, radius, s.tol.quadrature());
  const double constant = s.constant_scale * eigen_bound_constant(pair.eigenvalue, s.p, s.aif);
  VerificationReport r =
      make_report(s.id, "linfty_bound", Orientation::at_most, sup, constant * norm);
  r.add("domain", "ball");
  r.add("radius", radius);
  r.add("lambda", pair.eigenvalue);
  r.add("p", s.p);
  r.add("constant", constant);
  r.add("lp_norm", norm);
  r.add("boundary_value", pair.eigenfunction.value(radius));
  return r;
}

VerificationReport verify_whole(const BoundScenario& s, double lambda) {
  const std::optional<double> bottom = s.model.bottom_of_spectrum();
  if (!(lambda > 0.0)) throw DomainError("verify_linfty_bound: lambda must be positive");
  if (bottom && lambda > *bottom) {
    std::ostringstream reason;
    reason << "lambda " << lambda << " exceeds the bottom of the spectrum " << *bottom;
    return not_applicable(s.id, "linfty_bound", reason.str());
  }
  const double formula_threshold =
      bottom ? admissible_p_threshold(lambda, *bottom) : std::numeric_limits<double>::quiet_NaN();

  const WholeManifoldSolution solution = solve_whole_manifold(s.model, lambda, s.tol.ode());
  if (!solution.positive) {
    VerificationReport r = not_applicable(s.id, "linfty_bound",
                                          "regular solution changes sign (lambda above lambda_1)");
    r.add("truncation_radius", solution.truncation_radius);
    return r;
  }
  const TailNorm norm = lp_norm_whole_manifold(solution, s.model, s.p, s.tol.quadrature());

  auto describe = [&](VerificationReport& r) {
    r.add("domain", "whole_manifold");
    r.add("lambda", lambda);
    r.add("p", s.p);
    if (norm.divergent) {
      r.add("norm", "DIVERGENT");
    } else {
      r.add("lp_norm", norm.value);
    }
    r.add("p_threshold_formula", formula_threshold);
    r.add("p_threshold_measured", norm.measured_p_threshold);
    r.add("decay_exponent", norm.decay_exponent);
    r.add("volume_exponent", norm.volume_exponent);
    r.add("tail_exponent", norm.tail_exponent);
    r.add("truncation_radius", norm.truncation_radius);
    r.add("stabilized", solution.stabilized);
  };

  if (norm.divergent) {
    std::ostringstream reason;
    reason << "L^p norm diverges: tail exponent " << norm.tail_exponent << " >= 0 for p = " << s.p;
    VerificationReport r = not_applicable(s.id, "linfty_bound", reason.str());
    describe(r);
    return r;
  }
  if (bottom && !(s.p > formula_threshold)) {
    std::ostringstream reason;
    reason << "p = " << s.p << " is not above the admissible threshold " << formula_threshold;
    VerificationReport r = not_applicable(s.id, "linfty_bound", reason.str());
    describe(r);
    return r;
  }

  const double sup = sup_norm(solution.u);
  const double constant = s.constant_scale * eigen_bound_constant(lambda, s.p, s.aif);
  VerificationReport r =
      make_report(s.id, "linfty_bound", Orientation::at_most, sup, constant * norm.value);
  describe(r);
  r.add("constant", constant);
  r.add("tail_fraction", norm.tail / (norm.body + norm.tail));
  return r;
}

}  // namespace

VerificationReport verify_linfty_bound(const BoundScenario& scenario) {
  require_p(scenario.p, "verify_linfty_bound");
  VerificationReport r = std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, BallDomain>) {
          return verify_ball(scenario, d.radius);
        } else {
          return verify_whole(scenario, d.lambda);
        }
      },
      scenario.domain);
  r.add("model", scenario.model.describe());
  r.add("profile", scenario.aif.profile().describe());
  if (scenario.constant_scale != 1.0) r.add("constant_scale", scenario.constant_scale);
  return r;
}

}  // namespace specbound
