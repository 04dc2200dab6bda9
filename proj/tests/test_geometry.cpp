#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "specbound/error.hpp"
#include "specbound/numerics/special.hpp"
#include "specbound/warped_geometry.hpp"

using namespace specbound;

namespace {

std::vector<WarpingModel> sample_models() {
  return {WarpingModel::euclidean(2),
          WarpingModel::euclidean(3),
          WarpingModel::hyperbolic(2, 1.0),
          WarpingModel::hyperbolic(3, 0.5),
          WarpingModel::jacobi(2, [](double r) { return -1.0 / (1.0 + r * r); }),
          WarpingModel::jacobi(4, [](double r) { return -0.3 * r * r / (1.0 + r * r); })};
}

}  // namespace

TEST_CASE("warping closed forms") {
  const Warping e = warping_eval(WarpingModel::euclidean(2), 1.0);
  CHECK(e.f == 1.0);
  CHECK(e.f_prime == 1.0);
  const Warping h = warping_eval(WarpingModel::hyperbolic(2, 1.0), 1.0);
  CHECK(h.f == doctest::Approx(1.175201193643801));
  CHECK(h.f_prime == doctest::Approx(1.543080634815244));
  const Warping h4 = warping_eval(WarpingModel::hyperbolic(3, 4.0), 0.5);
  CHECK(h4.f == doctest::Approx(std::sinh(1.0) / 2.0));
  CHECK(h4.f_prime == doctest::Approx(std::cosh(1.0)));
}

TEST_CASE("flat Jacobi model is Euclidean") {
  const auto flat = WarpingModel::jacobi(2, [](double) { return 0.0; });
  const Warping w = warping_eval(flat, 2.0);
  CHECK(w.f == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(w.f_prime == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(warping_eval(flat, 0.0).f == 0.0);
  CHECK(warping_eval(flat, 0.0).f_prime == 1.0);
}

TEST_CASE("constant-curvature Jacobi model reproduces sinh") {
  for (double kappa : {0.5, 1.0, 2.0}) {
    const auto jacobi = WarpingModel::jacobi(3, [kappa](double) { return -kappa; });
    const double s = std::sqrt(kappa);
    for (double r = 0.0; r <= 10.0; r += 0.137) {
      const double exact = std::sinh(s * r) / s;
      // Relative: at r = 10 the warping is of order 1e5.
      CHECK(std::abs(warping_eval(jacobi, r).f - exact) <= 1e-8 * std::max(1.0, exact));
      CHECK(std::abs(warping_eval(jacobi, r).f_prime - std::cosh(s * r)) <=
            1e-8 * std::cosh(s * r));
    }
  }
}

TEST_CASE("Jacobi models reject positive curvature") {
  CHECK_THROWS_AS(WarpingModel::jacobi(2, [](double) { return 1.0; }), InvalidModelError);
  // The table grows in chunks of 4, so a bad stretch beyond 6 only shows up past 4.
  const auto late = WarpingModel::jacobi(2, [](double r) { return r > 6.0 ? 0.5 : -0.1; });
  CHECK_NOTHROW(warping_eval(late, 2.0));
  CHECK_THROWS_AS(warping_eval(late, 6.5), InvalidModelError);
}

TEST_CASE("Jacobi warping is convex with f' >= 1 on the sampled range") {
  const auto model = WarpingModel::jacobi(2, [](double r) { return -std::exp(-r); });
  double previous_slope = 1.0;
  for (double r = 0.05; r <= 12.0; r += 0.05) {
    const Warping w = warping_eval(model, r);
    CHECK(w.f > 0.0);
    CHECK(w.f_prime >= 1.0 - 1e-8);
    CHECK(w.f_prime >= previous_slope - 1e-9);
    previous_slope = w.f_prime;
  }
}

TEST_CASE("Jacobi table is deterministic and safe under concurrent extension") {
  const CurvatureFunction k = [](double r) { return -0.5 - 0.1 * std::sin(r) * std::sin(r); };
  const auto serial = WarpingModel::jacobi(2, k);
  std::vector<double> radii;
  for (int i = 0; i < 400; ++i) radii.push_back(0.1 * ((i * 37) % 400));
  std::vector<double> expected;
  for (double r : radii) expected.push_back(warping_eval(serial, r).f);

  const auto shared = WarpingModel::jacobi(2, k);
  std::vector<std::vector<double>> results(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = 0; i < radii.size(); ++i) {
        const std::size_t j = (i * (t + 1) * 7) % radii.size();
        results[t].push_back(j);
        results[t].push_back(warping_eval(shared, radii[j]).f);
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& list : results) {
    for (std::size_t i = 0; i < list.size(); i += 2) {
      CHECK(list[i + 1] == expected[static_cast<std::size_t>(list[i])]);
    }
  }
}

TEST_CASE("negative radii are rejected") {
  CHECK_THROWS_AS(warping_eval(WarpingModel::euclidean(2), -1.0), DomainError);
  CHECK_THROWS_AS(ball_volume(WarpingModel::hyperbolic(2, 1.0), -0.5), DomainError);
  CHECK_THROWS_AS(ball_area(WarpingModel::euclidean(3), -0.1), DomainError);
  CHECK_THROWS_AS(WarpingModel::euclidean(1), DomainError);
  CHECK_THROWS_AS(WarpingModel::hyperbolic(2, 0.0), DomainError);
}

TEST_CASE("ball volumes and areas against closed forms") {
  const auto e2 = WarpingModel::euclidean(2);
  const auto e3 = WarpingModel::euclidean(3);
  const auto h2 = WarpingModel::hyperbolic(2, 1.0);
  const auto h3 = WarpingModel::hyperbolic(3, 1.0);
  CHECK(ball_volume(e2, 1.0) == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(ball_area(e2, 1.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(ball_area(e3, 2.0) == doctest::Approx(16.0 * M_PI).epsilon(1e-14));
  CHECK(ball_volume(h2, 1.0) == doctest::Approx(2.0 * M_PI * (std::cosh(1.0) - 1.0)).epsilon(1e-12));
  CHECK(ball_volume(h2, 1.0) == doctest::Approx(3.41228).epsilon(1e-5));
  CHECK(ball_area(h2, 1.0) == doctest::Approx(7.38400).epsilon(1e-5));
  for (double R : {0.3, 1.0, 4.0}) {
    CHECK(ball_volume(h3, R) ==
          doctest::Approx(M_PI * (std::sinh(2.0 * R) - 2.0 * R)).epsilon(1e-12));
  }
  CHECK(ball_volume(e2, 0.0) == 0.0);
  const BallGeometry g = ball_geometry(h2, 2.0);
  CHECK(g.radius == 2.0);
  CHECK(g.boundary_area == doctest::Approx(2.0 * M_PI * std::sinh(2.0)));
}

TEST_CASE("small balls look Euclidean") {
  for (const auto& m : sample_models()) {
    const int n = m.dimension();
    const double R = 1e-4;
    CHECK(ball_volume(m, R) == doctest::Approx(numerics::unit_ball_volume(n) * std::pow(R, n)).epsilon(1e-7));
  }
}

TEST_CASE("volume is increasing, bounded below by the Euclidean ball and differentiates to area") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> radius(0.05, 6.0);
  for (const auto& m : sample_models()) {
    const int n = m.dimension();
    for (int i = 0; i < 20; ++i) {
      double a = radius(rng), b = radius(rng);
      if (a > b) std::swap(a, b);
      if (a == b) continue;
      CHECK(ball_volume(m, a) < ball_volume(m, b));
      CHECK(ball_area(m, a) < ball_area(m, b));
      CHECK(ball_volume(m, a) >= numerics::unit_ball_volume(n) * std::pow(a, n) * (1.0 - 1e-12));

      const double h = 1e-3 * b;
      auto V = [&](double r) { return ball_volume(m, r, 1e-13); };
      const double fd = (V(b - 2 * h) - 8 * V(b - h) + 8 * V(b + h) - V(b + 2 * h)) / (12.0 * h);
      CHECK(std::abs(fd - ball_area(m, b)) <= 1e-8 * ball_area(m, b));
    }
  }
}

TEST_CASE("radius for volume inverts ball_volume") {
  for (const auto& m : sample_models()) {
    for (double R : {1e-3, 0.2, 1.0, 3.0, 7.5}) {
      const double v = ball_volume(m, R);
      CHECK(ball_radius_for_volume(m, v) == doctest::Approx(R).epsilon(1e-12));
    }
    CHECK(ball_radius_for_volume(m, 0.0) == 0.0);
  }
  CHECK_THROWS_AS(ball_radius_for_volume(WarpingModel::euclidean(2), -1.0), DomainError);
}

TEST_CASE("bottom of the spectrum") {
  CHECK(*WarpingModel::euclidean(3).bottom_of_spectrum() == 0.0);
  CHECK(*WarpingModel::hyperbolic(2, 1.0).bottom_of_spectrum() == doctest::Approx(0.25));
  CHECK(*WarpingModel::hyperbolic(3, 1.0).bottom_of_spectrum() == doctest::Approx(1.0));
  CHECK(*WarpingModel::hyperbolic(4, 2.0).bottom_of_spectrum() == doctest::Approx(4.5));
  CHECK_FALSE(WarpingModel::jacobi(2, [](double) { return -1.0; }).bottom_of_spectrum());
}

TEST_CASE("log derivative") {
  CHECK(WarpingModel::euclidean(2).log_derivative(2.0) == doctest::Approx(0.5));
  CHECK(WarpingModel::hyperbolic(2, 1.0).log_derivative(1.0) == doctest::Approx(1.0 / std::tanh(1.0)));
  CHECK(WarpingModel::hyperbolic(2, 1.0).log_derivative(400.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(WarpingModel::euclidean(2).log_derivative(0.0), DomainError);
}
