#include <cmath>
#include <vector>

#include "doctest.h"
#include "specbound/bound_engine.hpp"
#include "specbound/error.hpp"

using namespace specbound;

namespace {

const double kD2 = std::sqrt(4.0 * M_PI);
const double kLambdaDisk = 5.783185962946785;

AifEvaluator croke2() { return AifEvaluator(IsoperimetricFunction::power_law(kD2, 2)); }

std::string text(const VerificationReport& r, const std::string& key) {
  const Diagnostic* d = r.find(key);
  REQUIRE(d != nullptr);
  return std::get<std::string>(d->value);
}

double number(const VerificationReport& r, const std::string& key) {
  const Diagnostic* d = r.find(key);
  REQUIRE(d != nullptr);
  return std::get<double>(d->value);
}

}  // namespace

TEST_CASE("bound constant on the planar power law") {
  CHECK(eigen_bound_constant(0.5, 2.0, croke2()) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-10));
  CHECK(eigen_bound_constant(kLambdaDisk, 2.0, croke2()) == doctest::Approx(1.91885).epsilon(1e-4));
  CHECK(eigen_bound_constant(kLambdaDisk, 2.0, croke2()) ==
        doctest::Approx(2.0 / std::sqrt(2.0 * M_PI / kLambdaDisk)).epsilon(1e-10));
  // H_a^{-1}(1/(2 lambda)) = 1 exactly when lambda = 2 pi for this profile.
  for (double p : {2.0, 3.0, 7.5}) CHECK(eigen_bound_constant(2.0 * M_PI, p, croke2()) == doctest::Approx(2.0));
  CHECK_THROWS_AS(eigen_bound_constant(0.0, 2.0, croke2()), DomainError);
  CHECK_THROWS_AS(eigen_bound_constant(1.0, 1.5, croke2()), DomainError);
}

TEST_CASE("closed-form constant") {
  CHECK(hadamard_constant(0.5, 2.0, 2, kD2) == doctest::Approx(1.0 / std::sqrt(M_PI)));
  CHECK(hadamard_constant(0.1875, 5.0, 2, kD2) == doctest::Approx(0.99074).epsilon(1e-4));
  CHECK(hadamard_constant(0.1875, 5.0, 2, kD2) == doctest::Approx(0.9908188867).epsilon(1e-9));
  for (double p : {2.0, 4.0, 9.0}) CHECK(hadamard_constant(3.0, p, 3, 3.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(hadamard_constant(1.0, 1.0, 2, 1.0), DomainError);
  CHECK_THROWS_AS(hadamard_constant(1.0, 2.0, 1, 1.0), DomainError);
  CHECK_THROWS_AS(hadamard_constant(1.0, 2.0, 2, -1.0), DomainError);
}

TEST_CASE("general and closed-form constants agree on power laws") {
  for (int n : {2, 3, 4}) {
    for (double D : {1.0, kD2}) {
      const AifEvaluator aif(IsoperimetricFunction::power_law(D, n));
      for (double lambda : {0.01, 0.2, 1.0, 5.0, 80.0}) {
        for (double p : {2.0, 2.5, 4.0, 8.0, 20.0}) {
          const double closed = hadamard_constant(lambda, p, n, D);
          CHECK(std::abs(eigen_bound_constant(lambda, p, aif) - closed) <= 1e-8 * closed);
        }
      }
    }
  }
}

TEST_CASE("monotonicity of the constant in lambda and p") {
  const AifEvaluator aif(IsoperimetricFunction::model_profile(WarpingModel::hyperbolic(2, 1.0)));
  for (double p : {2.0, 4.0, 9.0}) {
    double previous = 0.0;
    for (double lambda = 0.05; lambda < 50.0; lambda *= 1.8) {
      const double c = eigen_bound_constant(lambda, p, aif);
      CHECK(c >= previous);
      previous = c;
    }
  }
  // C = 2 b^{-1/p}: a base b = H_a^{-1}(1/(2 lambda)) below 1 (large lambda) makes C
  // shrink with p, a base above 1 (small lambda) makes it grow.
  for (auto [lambda, increasing] : std::vector<std::pair<double, bool>>{{20.0, false}, {0.05, true}}) {
    double previous = eigen_bound_constant(lambda, 2.0, aif);
    for (double p = 2.5; p < 30.0; p += 1.5) {
      const double c = eigen_bound_constant(lambda, p, aif);
      CHECK((increasing ? c > previous : c < previous));
      previous = c;
    }
  }
}

TEST_CASE("a weaker profile gives a weaker constant") {
  const AifEvaluator weak = croke2();
  const AifEvaluator sharp(IsoperimetricFunction::model_profile(WarpingModel::hyperbolic(2, 1.0)));
  for (double lambda : {0.05, 0.2, 1.0, 6.0}) {
    for (double p : {2.0, 5.0, 11.0}) {
      CHECK(eigen_bound_constant(lambda, p, weak) >= eigen_bound_constant(lambda, p, sharp));
    }
  }
}

TEST_CASE("admissible exponent threshold") {
  CHECK(admissible_p_threshold(0.1875, 0.25) == doctest::Approx(4.0));
  CHECK(admissible_p_threshold(1e-12, 0.25) == doctest::Approx(2.0));
  CHECK(std::isinf(admissible_p_threshold(0.25, 0.25)));
  CHECK_THROWS_AS(admissible_p_threshold(0.3, 0.25), DomainError);
}

TEST_CASE("torsion bound: equality on model balls, strict for the Croke profile") {
  const auto e2 = WarpingModel::euclidean(2);
  const AifEvaluator e2_balls(IsoperimetricFunction::model_profile(e2));
  const VerificationReport flat = torsion_bound_check(e2, 1.0, e2_balls);
  CHECK(flat.satisfied());
  CHECK(flat.lhs == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(flat.rhs == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(std::abs(flat.slack - 1.0) < 1e-5);

  const auto h2 = WarpingModel::hyperbolic(2, 1.0);
  const AifEvaluator h2_balls(IsoperimetricFunction::model_profile(h2));
  for (double R : {0.5, 1.0, 3.0}) {
    const VerificationReport sharp = torsion_bound_check(h2, R, h2_balls);
    CHECK(sharp.satisfied());
    CHECK(std::abs(sharp.slack - 1.0) < 1e-5);
  }

  const VerificationReport strict = torsion_bound_check(h2, 1.0, croke2());
  CHECK(strict.satisfied());
  CHECK(strict.rhs == doctest::Approx(ball_volume(h2, 1.0) / (4.0 * M_PI)).epsilon(1e-10));
  CHECK(strict.slack > 1.1);
  CHECK(text(strict, "orientation") == "lhs<=rhs");
}

TEST_CASE("L^p lower bound on the unit disk") {
  const DirichletEigenpair disk = dirichlet_eigenpair(WarpingModel::euclidean(2), 1.0);
  const VerificationReport r = lp_lower_bound_check(disk, 0.0, 2.0, croke2());
  CHECK(r.satisfied());
  CHECK(r.lhs == doctest::Approx(0.846706).epsilon(1e-4));
  CHECK(r.rhs == doctest::Approx(0.271599).epsilon(1e-4));
  CHECK(r.rhs == doctest::Approx(0.25 * 2.0 * M_PI / kLambdaDisk).epsilon(1e-8));
  CHECK(r.slack == doctest::Approx(r.lhs / r.rhs));

  // The bound degenerates to 0 as gamma approaches sup |w|.
  const VerificationReport near = lp_lower_bound_check(disk, 1.0 - 1e-9, 2.0, croke2());
  CHECK(near.satisfied());
  CHECK(near.rhs < 1e-8);
  CHECK_THROWS_AS(lp_lower_bound_check(disk, 1.0, 2.0, croke2()), PreconditionError);
  CHECK_THROWS_AS(lp_lower_bound_check(disk, -0.1, 2.0, croke2()), PreconditionError);
}

TEST_CASE("energy identity for Dirichlet eigenpairs") {
  for (const auto& [model, R] : std::vector<std::pair<WarpingModel, double>>{
           {WarpingModel::euclidean(2), 1.0},
           {WarpingModel::euclidean(3), M_PI},
           {WarpingModel::hyperbolic(2, 1.0), 2.0},
           {WarpingModel::jacobi(3, [](double r) { return -0.5 * r / (1.0 + r); }), 1.3}}) {
    const VerificationReport r = energy_identity_check(dirichlet_eigenpair(model, R));
    CHECK(r.satisfied());
    CHECK(number(r, "relative_gap") < 1e-5);
  }
  const DirichletEigenpair zero{WarpingModel::euclidean(2), 1.0, 1.0,
                                RadialFunction({0.0, 1.0}, {0.0, 0.0}, {0.0, 0.0})};
  CHECK_THROWS_AS(energy_identity_check(zero), PreconditionError);
}

TEST_CASE("co-area chain") {
  const auto e2 = WarpingModel::euclidean(2);
  const VerificationReport flat =
      coarea_chain_check(e2, 1.0, AifEvaluator(IsoperimetricFunction::model_profile(e2)));
  CHECK(flat.satisfied());
  CHECK(std::abs(flat.lhs - 1.0) < 1e-6);
  CHECK(std::abs(number(flat, "max_quotient") - 1.0) < 1e-6);

  const auto h2 = WarpingModel::hyperbolic(2, 1.0);
  const VerificationReport curved =
      coarea_chain_check(h2, 1.5, AifEvaluator(IsoperimetricFunction::model_profile(h2)));
  CHECK(curved.satisfied());
  CHECK(curved.lhs >= 1.0 - 1e-6);
  // A weaker profile makes the chain strictly larger than 1.
  const VerificationReport weak = coarea_chain_check(h2, 1.5, croke2());
  CHECK(weak.lhs > 1.0 + 1e-3);
}

TEST_CASE("L^inf bound on Euclidean discs") {
  BoundScenario s{"disk", WarpingModel::euclidean(2), croke2(), 2.0, BallDomain{1.0}};
  const VerificationReport r = verify_linfty_bound(s);
  CHECK(r.satisfied());
  CHECK(r.lhs == doctest::Approx(1.0));
  CHECK(r.rhs == doctest::Approx(1.76565).epsilon(1e-4));
  CHECK(number(r, "lambda") == doctest::Approx(kLambdaDisk).epsilon(1e-8));

  s.constant_scale = 0.5;
  const VerificationReport halved = verify_linfty_bound(s);
  CHECK(halved.status == CheckStatus::violated);
  CHECK(halved.rhs == doctest::Approx(0.88283).epsilon(1e-4));

  s.constant_scale = 1.0;
  s.p = 1.5;
  CHECK_THROWS_AS(verify_linfty_bound(s), DomainError);
}

TEST_CASE("L^inf bound on the whole hyperbolic plane") {
  const auto h2 = WarpingModel::hyperbolic(2, 1.0);
  BoundScenario s{"h2", h2, croke2(), 5.0, WholeManifoldDomain{0.1875}};
  const VerificationReport ok = verify_linfty_bound(s);
  CHECK(ok.satisfied());
  CHECK(number(ok, "constant") == doctest::Approx(0.99074).epsilon(1e-4));
  CHECK(number(ok, "lp_norm") >= 1.0 / 0.9908188867);

  s.p = 3.0;
  const VerificationReport divergent = verify_linfty_bound(s);
  CHECK(divergent.status == CheckStatus::not_applicable);
  CHECK(text(divergent, "norm") == "DIVERGENT");
  CHECK(number(divergent, "tail_exponent") == doctest::Approx(1.0 - 3.0 * 0.25).epsilon(1e-2));
  CHECK(text(divergent, "reason").find("diverges") != std::string::npos);

  s.domain = WholeManifoldDomain{0.3};
  s.p = 6.0;
  const VerificationReport above = verify_linfty_bound(s);
  CHECK(above.status == CheckStatus::not_applicable);
  CHECK(text(above, "reason").find("bottom of the spectrum") != std::string::npos);

  // Finite measured norm but p below the quoted threshold 10.
  s.domain = WholeManifoldDomain{0.24};
  s.p = 4.0;
  const VerificationReport below = verify_linfty_bound(s);
  CHECK(below.status == CheckStatus::not_applicable);
  CHECK(below.find("lp_norm") != nullptr);
  CHECK(number(below, "p_threshold_formula") == doctest::Approx(10.0));
}

TEST_CASE("L^inf bound on a Jacobi model without a known spectrum bottom") {
  const auto model = WarpingModel::jacobi(2, [](double r) { return -1.0 + 0.5 / (1.0 + r * r); });
  BoundScenario s{"jacobi", model, croke2(), 12.0, WholeManifoldDomain{0.1}};
  const VerificationReport r = verify_linfty_bound(s);
  CHECK(r.applicable());
  CHECK(r.satisfied());
}

TEST_CASE("report slack orientation") {
  CHECK(slack_ratio(Orientation::at_most, 1.0, 2.0) == 2.0);
  CHECK(slack_ratio(Orientation::at_least, 1.0, 2.0) == 0.5);
  CHECK(std::isinf(slack_ratio(Orientation::at_least, 1.0, 0.0)));
  CHECK(make_report("s", "c", Orientation::at_most, 1.0 + 1e-7, 1.0).satisfied());
  CHECK_FALSE(make_report("s", "c", Orientation::at_most, 1.0 + 1e-5, 1.0).satisfied());
  CHECK(make_report("s", "c", Orientation::at_least, 1.0 - 1e-7, 1.0).satisfied());
  CHECK_FALSE(make_report("s", "c", Orientation::equal, 1.0 + 1e-5, 1.0).satisfied());
}
