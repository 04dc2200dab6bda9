#include "specbound/isoperimetry.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include "specbound/error.hpp"
#include "specbound/numerics/quadrature.hpp"

namespace specbound {

namespace {

constexpr int kMaxAnchors = 1100;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

double parse_double(std::string_view field, const std::filesystem::path& path, int line) {
  field = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    std::ostringstream msg;
    msg << path.string() << ":" << line << ": not a number: '" << field << "'";
    throw InvalidProfileError(msg.str());
  }
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------
// IsoperimetricFunction

IsoperimetricFunction IsoperimetricFunction::power_law(double D, int n) {
  if (!(D > 0.0) || !std::isfinite(D)) throw DomainError("power_law: D must be positive");
  if (n < 2) throw DomainError("power_law: dimension must be >= 2");
  return IsoperimetricFunction(PowerLaw{D, n});
}

IsoperimetricFunction IsoperimetricFunction::model_profile(WarpingModel model, double rel_tol) {
  return IsoperimetricFunction(ModelProfile{std::move(model), rel_tol});
}

IsoperimetricFunction IsoperimetricFunction::tabulated(std::vector<double> s,
                                                       std::vector<double> H) {
  if (s.size() < 2 || s.size() != H.size()) {
    throw InvalidProfileError("tabulated profile: need at least two samples of (s, H)");
  }
  if (s.front() != 0.0 || H.front() != 0.0) {
    throw InvalidProfileError("tabulated profile: first sample must be (0, 0)");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || !std::isfinite(H[i])) {
      throw InvalidProfileError("tabulated profile: non-finite sample");
    }
    if (i > 0 && !(s[i] > s[i - 1])) {
      throw InvalidProfileError("tabulated profile: s must be strictly increasing");
    }
    if (i > 0 && !(H[i] > 0.0)) {
      throw InvalidProfileError("tabulated profile: H must be positive for s > 0");
    }
  }
  auto curve = std::make_shared<const numerics::MonotoneCubic>(std::move(s), std::move(H));
  return IsoperimetricFunction(Tabulated{std::move(curve)});
}

IsoperimetricFunction IsoperimetricFunction::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidProfileError("cannot open profile table " + path.string());
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<double> s;
  std::vector<double> H;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (view.empty()) continue;
    if (!header_seen) {
      if (view != "s,H") {
        throw InvalidProfileError(path.string() + ":" + std::to_string(line_no) +
                                  ": expected header 's,H'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
      throw InvalidProfileError(path.string() + ":" + std::to_string(line_no) +
                                ": expected two comma-separated columns");
    }
    s.push_back(parse_double(view.substr(0, comma), path, line_no));
    H.push_back(parse_double(view.substr(comma + 1), path, line_no));
  }
  if (!header_seen) throw InvalidProfileError(path.string() + ": empty profile table");
  return tabulated(std::move(s), std::move(H));
}

double IsoperimetricFunction::operator()(double s) const {
  if (!(s >= 0.0) || s > domain_end()) {
    std::ostringstream msg;
    msg << "profile_eval: s = " << s << " outside [0, " << domain_end() << "]";
    throw DomainError(msg.str());
  }
  if (s == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [s](const PowerLaw& p) { return p.D * std::pow(s, 1.0 - 1.0 / p.n); },
          [s](const ModelProfile& p) {
            return ball_area(p.model, ball_radius_for_volume(p.model, s, p.rel_tol));
          },
          [s](const Tabulated& p) { return (*p.curve)(s); },
      },
      variant_);
}

double IsoperimetricFunction::domain_end() const {
  if (const auto* t = std::get_if<Tabulated>(&variant_)) return t->curve->back();
  return std::numeric_limits<double>::infinity();
}

std::string IsoperimetricFunction::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const PowerLaw& p) { out << "power_law(D=" << p.D << ",n=" << p.n << ")"; },
                 [&](const ModelProfile& p) {
                   out << "candidate_model_profile(" << p.model.describe() << ")";
                 },
                 [&](const Tabulated& p) {
                   out << "tabulated(" << p.curve->nodes().size() << " samples)";
                 },
             },
             variant_);
  return out.str();
}

double profile_eval(const IsoperimetricFunction& profile, double s) { return profile(s); }

// ---------------------------------------------------------------------------
// AifEvaluator

struct AifEvaluator::Cache {
  IsoperimetricFunction profile;
  double rel_tol;
  double split;
  double end;

  mutable std::shared_mutex mutex;
  std::vector<double> anchor_t;
  std::vector<double> anchor_value;

  Cache(IsoperimetricFunction p, double tol)
      : profile(std::move(p)), rel_tol(tol), split(std::min(kSplit, profile.domain_end())),
        end(profile.domain_end()) {}

  double checked_profile(double s) const {
    const double h = profile(s);
    if (!(h > 0.0) || !std::isfinite(h)) {
      std::ostringstream msg;
      msg << "isoperimetric function vanishes or is invalid at s = " << s << " (H = " << h << ")";
      throw InvalidProfileError(msg.str());
    }
    return h;
  }

  // Closed-form integral of s / (c s^alpha)^2 over [0, eps] with the power law fitted
  // through H(eps) and H(eps / 2).
  double singular_part(double eps) const {
    if (eps == 0.0) return 0.0;
    const double h1 = checked_profile(eps);
    const double h2 = checked_profile(0.5 * eps);
    const double alpha = std::log2(h1 / h2);
    if (!(alpha < 1.0)) {
      std::ostringstream msg;
      msg << "a.i.f. not well-defined: s/H(s)^2 is not integrable at 0 (local exponent "
          << alpha << ")";
      throw InvalidProfileError(msg.str());
    }
    return eps * eps / (2.0 * (1.0 - alpha) * h1 * h1);
  }

  // integral_a^b s / H(s)^2 ds in the variable x = log s.
  double segment(double a, double b) const {
    if (b <= a) return 0.0;
    numerics::QuadratureOptions options;
    options.rel_tol = rel_tol;
    const auto result = numerics::integrate(
        [this](double x) {
          const double s = std::exp(x);
          const double h = checked_profile(s);
          return (s / h) * (s / h);
        },
        std::log(a), std::log(b), options);
    return result.value;
  }

  double anchor_position(int k) const { return std::min(std::ldexp(split, k), end); }

  bool is_last_anchor(int k) const { return anchor_position(k) >= end; }

  // Caller holds the unique lock.
  void extend_to(int k) {
    if (anchor_t.empty()) {
      anchor_t.push_back(split);
      anchor_value.push_back(singular_part(split));
    }
    while (static_cast<int>(anchor_t.size()) <= k) {
      const int next = static_cast<int>(anchor_t.size());
      if (next > kMaxAnchors || is_last_anchor(next - 1)) {
        throw RangeError("a.i.f.: argument beyond the cached range");
      }
      const double t = anchor_position(next);
      anchor_value.push_back(anchor_value.back() + segment(anchor_t.back(), t));
      anchor_t.push_back(t);
    }
  }

  std::pair<double, double> anchor(int k) {
    {
      std::shared_lock lock(mutex);
      if (static_cast<int>(anchor_t.size()) > k) return {anchor_t[k], anchor_value[k]};
    }
    std::unique_lock lock(mutex);
    extend_to(k);
    return {anchor_t[k], anchor_value[k]};
  }

  int anchor_index(double t) const {
    int k = static_cast<int>(std::floor(std::log2(t / split)));
    k = std::max(k, 0);
    while (k > 0 && anchor_position(k) > t) --k;
    while (!is_last_anchor(k) && anchor_position(k + 1) <= t) ++k;
    return k;
  }

  double eval(double t) {
    if (!(t >= 0.0) || t > end) {
      std::ostringstream msg;
      msg << "aif_eval: t = " << t << " outside [0, " << end << "]";
      throw DomainError(msg.str());
    }
    if (t == 0.0) return 0.0;
    if (t <= split) return singular_part(t);
    const int k = anchor_index(t);
    const auto [tk, value] = anchor(k);
    return value + segment(tk, t);
  }
};

AifEvaluator::AifEvaluator(IsoperimetricFunction profile, double rel_tol)
    : cache_(std::make_shared<Cache>(std::move(profile), rel_tol)) {
  if (!(rel_tol > 0.0)) throw DomainError("AifEvaluator: tolerance must be positive");
}

double AifEvaluator::operator()(double t) const { return cache_->eval(t); }

double AifEvaluator::derivative(double t) const {
  if (t == 0.0) return 0.0;
  const double h = cache_->checked_profile(t);
  return t / (h * h);
}

double AifEvaluator::inverse(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw DomainError("aif_inverse: argument must be finite and nonnegative");
  }
  if (y == 0.0) return 0.0;
  Cache& cache = *cache_;

  double lo = 0.0;
  double hi = cache.split;
  if (cache.singular_part(cache.split) < y) {
    int k = 0;
    for (;;) {
      if (cache.is_last_anchor(k)) {
        std::ostringstream msg;
        msg << "aif_inverse: " << y << " exceeds sup H_a = " << cache.anchor(k).second
            << " on the finite domain [0, " << cache.end << "]";
        throw RangeError(msg.str());
      }
      if (k >= kMaxAnchors) throw RangeError("aif_inverse: argument out of reach");
      const auto [tk, value] = cache.anchor(k + 1);
      if (value >= y) {
        lo = cache.anchor(k).first;
        hi = tk;
        break;
      }
      ++k;
    }
  }

  // Safeguarded Newton on the monotone bracket.
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = cache.eval(t) - y;
    if (residual == 0.0) return t;
    if (residual > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    double next = t - residual / derivative(t);
    if (!(next > lo && next < hi) || iter > 80) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 2.0 * std::numeric_limits<double>::epsilon() * t) {
      t = next;
      break;
    }
    t = next;
  }
  if (std::abs(cache.eval(t) - y) > cache.rel_tol * std::max(1.0, y)) {
    throw NumericError("aif_inverse: residual above tolerance");
  }
  return t;
}

const IsoperimetricFunction& AifEvaluator::profile() const { return cache_->profile; }

double AifEvaluator::tolerance() const { return cache_->rel_tol; }

double aif_eval(const AifEvaluator& aif, double t) { return aif(t); }

double aif_inverse(const AifEvaluator& aif, double y) { return aif.inverse(y); }

}  // namespace specbound
