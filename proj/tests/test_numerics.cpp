#include <cmath>
#include <random>

#include "doctest.h"
#include "specbound/error.hpp"
#include "specbound/numerics/format.hpp"
#include "specbound/numerics/interpolation.hpp"
#include "specbound/numerics/ode.hpp"
#include "specbound/numerics/quadrature.hpp"
#include "specbound/numerics/special.hpp"

using namespace specbound;
using namespace specbound::numerics;

TEST_CASE("quadrature reproduces elementary integrals") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0).value ==
        doctest::Approx(M_E - 1.0).epsilon(1e-13));
  // Endpoint singularity of the derivative.
  CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0).value ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(integrate([](double x) { return x * x; }, 2.0, 0.0).value ==
        doctest::Approx(-8.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
}

TEST_CASE("a single Kronrod panel is exact for polynomials of degree 20") {
  double err = 0.0;
  const double v = gauss_kronrod15([](double x) { return std::pow(x, 20); }, -1.0, 1.0, err);
  CHECK(v == doctest::Approx(2.0 / 21.0).epsilon(1e-14));
}

TEST_CASE("quadrature gives up with a numeric error when the budget is exhausted") {
  QuadratureOptions opts;
  opts.max_panels = 4;
  opts.rel_tol = 1e-14;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, opts),
                  NumericError);
}

TEST_CASE("hermite cubic interpolates values and slopes") {
  const double x0 = 1.0, x1 = 3.0, y0 = 2.0, y1 = -1.0, d0 = 0.5, d1 = 4.0;
  CHECK(hermite_value(x0, x1, y0, y1, d0, d1, x0) == doctest::Approx(y0));
  CHECK(hermite_value(x0, x1, y0, y1, d0, d1, x1) == doctest::Approx(y1));
  CHECK(hermite_derivative(x0, x1, y0, y1, d0, d1, x0) == doctest::Approx(d0));
  CHECK(hermite_derivative(x0, x1, y0, y1, d0, d1, x1) == doctest::Approx(d1));
  for (double c : hermite_critical_points(x0, x1, y0, y1, d0, d1)) {
    CHECK(std::abs(hermite_derivative(x0, x1, y0, y1, d0, d1, c)) < 1e-12);
  }
}

TEST_CASE("critical points of a cubic with an interior maximum") {
  // u = 1 - (x - 0.5)^2 on [0, 1] written through its Hermite data.
  const auto c = hermite_critical_points(0.0, 1.0, 0.75, 0.75, 1.0, -1.0);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == doctest::Approx(0.5));
}

TEST_CASE("locate_panel clamps to the end panels") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  CHECK(locate_panel(x, -1.0) == 0);
  CHECK(locate_panel(x, 0.0) == 0);
  CHECK(locate_panel(x, 1.5) == 1);
  CHECK(locate_panel(x, 3.0) == 2);
  CHECK(locate_panel(x, 7.0) == 2);
}

TEST_CASE("monotone cubic keeps random monotone data monotone") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> step(0.01, 2.0);
  std::uniform_real_distribution<double> rise(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x{0.0}, y{0.0};
    for (int i = 0; i < 12; ++i) {
      x.push_back(x.back() + step(rng));
      // Flat stretches are allowed and must stay flat.
      y.push_back(y.back() + (i % 4 == 3 ? 0.0 : rise(rng)));
    }
    const MonotoneCubic curve(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(curve(x[i]) == y[i]);
    double previous = curve(x.front());
    for (int k = 1; k <= 4000; ++k) {
      const double v = curve(x.back() * k / 4000.0);
      CHECK(v >= previous - 1e-12);
      previous = v;
    }
  }
}

TEST_CASE("monotone cubic is third-order accurate on smooth data") {
  std::vector<double> x, y;
  for (int i = 0; i <= 200; ++i) {
    x.push_back(i * 0.01);
    y.push_back(std::sqrt(1.0 + x.back()));
  }
  const MonotoneCubic curve(x, y);
  for (double v = 0.0; v <= 2.0; v += 0.0037) {
    CHECK(std::abs(curve(v) - std::sqrt(1.0 + v)) < 1e-7);
  }
}

TEST_CASE("gamma at integers and half-integers") {
  CHECK(gamma_half_integer(1.0) == 1.0);
  CHECK(gamma_half_integer(0.5) == doctest::Approx(std::sqrt(M_PI)));
  CHECK(gamma_half_integer(5.0) == doctest::Approx(24.0));
  CHECK(gamma_half_integer(3.5) == doctest::Approx(std::tgamma(3.5)).epsilon(1e-15));
  CHECK_THROWS_AS(gamma_half_integer(0.3), DomainError);
  CHECK_THROWS_AS(gamma_half_integer(0.0), DomainError);
}

TEST_CASE("sphere measures and unit ball volumes") {
  CHECK(sphere_measure(2) == doctest::Approx(2.0 * M_PI));
  CHECK(sphere_measure(3) == doctest::Approx(4.0 * M_PI));
  CHECK(sphere_measure(4) == doctest::Approx(2.0 * M_PI * M_PI));
  for (int n = 2; n <= 9; ++n) {
    CHECK(unit_ball_volume(n) == doctest::Approx(sphere_measure(n) / n));
  }
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
}

TEST_CASE("dopri5 on the harmonic oscillator") {
  OdeOptions opts;
  opts.rel_tol = 1e-11;
  opts.max_step = 0.1;
  OdeState<2> last{};
  int calls = 0;
  const double t = integrate_dopri5<2>(
      [](double, const OdeState<2>& y) { return OdeState<2>{y[1], -y[0]}; }, 0.0, {0.0, 1.0},
      10.0, opts, [&](double, const OdeState<2>& y, const OdeState<2>&) {
        last = y;
        ++calls;
        return true;
      });
  CHECK(t == 10.0);
  CHECK(calls > 100);
  CHECK(last[0] == doctest::Approx(std::sin(10.0)).epsilon(1e-9));
  CHECK(last[1] == doctest::Approx(std::cos(10.0)).epsilon(1e-9));
}

TEST_CASE("dopri5 stops when the observer asks") {
  OdeOptions opts;
  double stopped = 0.0;
  integrate_dopri5<1>([](double, const OdeState<1>&) { return OdeState<1>{-1.0}; }, 0.0, {1.0},
                      5.0, opts, [&](double t, const OdeState<1>& y, const OdeState<1>&) {
                        stopped = t;
                        return y[0] > 0.0;
                      });
  CHECK(stopped >= 1.0);
  CHECK(stopped < 1.1);
}

TEST_CASE("dopri5 reports step underflow at a blow-up") {
  OdeOptions opts;
  CHECK_THROWS_AS(integrate_dopri5<1>(
                      [](double, const OdeState<1>& y) { return OdeState<1>{y[0] * y[0]}; }, 0.0,
                      {1.0}, 2.0, opts,
                      [](double, const OdeState<1>&, const OdeState<1>&) { return true; }),
                  NumericError);
}
