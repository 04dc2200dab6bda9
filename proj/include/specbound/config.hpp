#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "specbound/error.hpp"
#include "specbound/isoperimetry.hpp"
#include "specbound/tolerances.hpp"
#include "specbound/warped_geometry.hpp"

namespace specbound {

/// Malformed JSON, schema violations and dangling references in a run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class CheckKind { torsion_bound, linfty_bound, lp_lower_bound, energy_identity, coarea_chain };

const char* to_string(CheckKind kind);

struct NamedModel {
  std::string name;
  WarpingModel model;
};

struct NamedProfile {
  std::string name;
  IsoperimetricFunction profile;
};

struct ScenarioSpec {
  std::string id;
  CheckKind check = CheckKind::torsion_bound;
  std::string model;
  std::string profile;  // empty for energy_identity
  std::optional<double> radius;
  std::optional<double> lambda;
  double p = 2.0;
  double gamma = 0.0;
  double constant_scale = 1.0;
  int levels = 50;
};

struct RunConfig {
  std::vector<NamedModel> models;
  std::vector<NamedProfile> profiles;
  std::vector<ScenarioSpec> scenarios;
  std::filesystem::path output_dir = "specbound-out";
  Tolerances tol;
  int jobs = 1;

  const WarpingModel& model(const std::string& name) const;
  const IsoperimetricFunction& profile(const std::string& name) const;
};

/// Reads and validates a `schema: 1` JSON configuration. Relative paths (tabulated
/// profiles, output_dir) resolve against the file's directory.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text,
                            const std::filesystem::path& base_dir = std::filesystem::path("."));

/// SPECBOUND_TOL if set, else `fallback`. Throws ConfigError on a malformed value.
double global_tolerance_from_env(double fallback);

}  // namespace specbound
