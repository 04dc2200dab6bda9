#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "specbound/numerics/interpolation.hpp"
#include "specbound/warped_geometry.hpp"

namespace specbound {

/// A lower bound H(|Omega|) <= |dOmega| for the boundary measure of compactly contained
/// domains, as a function of enclosed volume. H(0) = 0 for every variant.
class IsoperimetricFunction {
 public:
  /// H(s) = D s^{1 - 1/n}, the Croke-type bound of a Hadamard manifold.
  struct PowerLaw {
    double D;
    int n;
  };
  /// H(v) = |dB_R| with |B_R| = v: the geodesic-ball profile of a model manifold.
  /// Balls are not known to be isoperimetric in every model, so this is a candidate.
  struct ModelProfile {
    WarpingModel model;
    double rel_tol;
  };
  /// Monotone piecewise-cubic interpolation of samples (s_i, H_i) with s_0 = 0, H_0 = 0.
  /// Queries beyond the last sample are rejected.
  struct Tabulated {
    std::shared_ptr<const numerics::MonotoneCubic> curve;
  };
  using Variant = std::variant<PowerLaw, ModelProfile, Tabulated>;

  static IsoperimetricFunction power_law(double D, int n);
  static IsoperimetricFunction model_profile(WarpingModel model, double rel_tol = 1e-10);
  static IsoperimetricFunction tabulated(std::vector<double> s, std::vector<double> H);

  /// Two-column CSV with header `s,H`.
  static IsoperimetricFunction load_csv(const std::filesystem::path& path);

  double operator()(double s) const;

  /// Largest admissible argument (inclusive); +inf unless tabulated.
  double domain_end() const;

  bool is_candidate() const { return std::holds_alternative<ModelProfile>(variant_); }
  const Variant& variant() const { return variant_; }
  std::string describe() const;

 private:
  explicit IsoperimetricFunction(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

double profile_eval(const IsoperimetricFunction& profile, double s);

/// The associated isoperimetric function H_a(t) = integral_0^t s / H(s)^2 ds and its
/// inverse.
///
/// The integral is split at min(t, 1e-4): below the split H is replaced by the power law
/// through H(eps) and H(eps/2), integrated in closed form; above it the integrand is
/// integrated in log(s) between cached anchors at 1e-4 * 2^k. Anchor values only depend
/// on their position, so results are independent of query order and thread interleaving.
class AifEvaluator {
 public:
  static constexpr double kSplit = 1e-4;

  explicit AifEvaluator(IsoperimetricFunction profile, double rel_tol = 1e-10);

  double operator()(double t) const;
  double inverse(double y) const;

  /// H_a'(t) = t / H(t)^2.
  double derivative(double t) const;

  const IsoperimetricFunction& profile() const;
  double tolerance() const;

 private:
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

double aif_eval(const AifEvaluator& aif, double t);
double aif_inverse(const AifEvaluator& aif, double y);

}  // namespace specbound
