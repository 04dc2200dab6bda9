#include "specbound/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "specbound/error.hpp"

namespace specbound::numerics {

namespace {

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct LargerError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;
  }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b) {
  Panel p{a, b, 0.0, 0.0};
  p.value = gauss_kronrod15(f, a, b, p.error);
  return p;
}

}  // namespace

double gauss_kronrod15(const std::function<double(double)>& f, double a, double b, double& error) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double magnitude = std::abs(kronrod);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    magnitude += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  magnitude *= std::abs(half);
  error = std::abs(kronrod - gauss);
  // Below this level the difference is rounding noise, not truncation.
  if (error < 50.0 * std::numeric_limits<double>::epsilon() * magnitude) error = 0.0;
  if (!std::isfinite(kronrod)) error = std::numeric_limits<double>::infinity();
  return kronrod;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (a == b) return {};
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw DomainError("integrate: non-finite integration limits");
  }
  if (b < a) {
    QuadratureResult r = integrate(f, b, a, options);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Panel, std::vector<Panel>, LargerError> queue;
  Panel first = make_panel(f, a, b);
  double total = first.value;
  double total_error = first.error;
  queue.push(first);
  int panels = 1;

  auto converged = [&] {
    return total_error <= std::max(options.abs_tol, options.rel_tol * std::abs(total));
  };

  while (!converged()) {
    if (panels >= options.max_panels) {
      std::ostringstream msg;
      msg << "integrate: no convergence on [" << a << ", " << b << "] after " << panels
          << " panels (error estimate " << total_error << ", value " << total << ")";
      throw NumericError(msg.str());
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericError("integrate: panel width underflow (non-integrable singularity?)");
    }
    Panel left = make_panel(f, worst.a, mid);
    Panel right = make_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  // Re-sum in positional order so the result does not carry incremental drift.
  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  QuadratureResult result;
  double compensation = 0.0;
  for (const Panel& p : all) {
    const double y = p.value - compensation;
    const double t = result.value + y;
    compensation = (t - result.value) - y;
    result.value = t;
    result.error += p.error;
  }
  result.panels = panels;
  return result;
}

}  // namespace specbound::numerics
