#pragma once

#include <optional>
#include <string>
#include <variant>

#include "specbound/isoperimetry.hpp"
#include "specbound/radial_solver.hpp"
#include "specbound/report.hpp"
#include "specbound/tolerances.hpp"
#include "specbound/warped_geometry.hpp"

namespace specbound {

/// Relative margin below which an oriented slack still counts as satisfied.
constexpr double kCheckMargin = 1e-6;
/// Relative tolerance of the energy identity, an equality up to discretization error.
constexpr double kEnergyTolerance = 1e-5;

/// C(lambda, p, H) = 2 (H_a^{-1}(1 / (2 lambda)))^{-1/p}.
double eigen_bound_constant(double lambda, double p, const AifEvaluator& aif);

/// Closed form of the same constant for H(s) = D s^{1-1/n}: 2 (n lambda)^{n/2p} / D^{n/p}.
double hadamard_constant(double lambda, double p, int n, double D);

/// 2 / sqrt(1 - lambda/lambda1); +inf when lambda == lambda1.
double admissible_p_threshold(double lambda, double lambda1);

/// sup u <= H_a(|B_R|) for the torsion function u of B_R.
VerificationReport torsion_bound_check(const WarpingModel& model, double radius,
                                       const AifEvaluator& aif, const Tolerances& tol = {});

/// ||w||_p^p >= ((||w||_inf + gamma)/2)^p H_a^{-1}((||w||_inf - gamma) / (2 lambda ||w||_inf)).
VerificationReport lp_lower_bound_check(const DirichletEigenpair& pair, double gamma, double p,
                                        const AifEvaluator& aif, const Tolerances& tol = {});

/// integral |u'|^2 = lambda integral u^2 over B_R for a Dirichlet eigenpair.
VerificationReport energy_identity_check(const DirichletEigenpair& pair,
                                         const Tolerances& tol = {});

/// -d/dt H_a(mu(t)) >= 1 for the torsion function of B_R, by central differences at
/// `levels` equally spaced interior levels. lhs is the smallest quotient; the largest is
/// kept as a diagnostic.
VerificationReport coarea_chain_check(const WarpingModel& model, double radius,
                                      const AifEvaluator& aif, int levels = 50,
                                      const Tolerances& tol = {});

struct BallDomain {
  double radius;
};
struct WholeManifoldDomain {
  double lambda;
};
using ScenarioDomain = std::variant<BallDomain, WholeManifoldDomain>;

struct BoundScenario {
  std::string id;
  WarpingModel model;
  AifEvaluator aif;
  double p = 2.0;
  ScenarioDomain domain;
  /// Multiplies C before comparing; 1 except when deliberately breaking the bound.
  double constant_scale = 1.0;
  Tolerances tol;
};

/// ||w||_inf <= C(lambda, p, H) ||w||_p. On a ball w is the principal Dirichlet
/// eigenfunction; on the whole model it is the regular radial solution. Whole-model
/// scenarios outside the admissible range or with a divergent L^p norm are reported
/// not applicable.
VerificationReport verify_linfty_bound(const BoundScenario& scenario);

/// Shared classification of a computed (lhs, rhs) pair.
VerificationReport make_report(std::string scenario, std::string check, Orientation orientation,
                               double lhs, double rhs, double tolerance = kCheckMargin);

}  // namespace specbound
