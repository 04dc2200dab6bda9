#include "specbound/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace specbound {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

void allow_keys(const json& object, const std::string& path, std::initializer_list<const char*> keys) {
  if (!object.is_object()) schema_error(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) schema_error(path + "." + key, "unknown key");
  }
}

const json& require(const json& object, const std::string& path, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) schema_error(path + "." + key, "missing required key");
  return *it;
}

double number_at(const json& value, const std::string& path) {
  if (!value.is_number()) schema_error(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) schema_error(path, "expected a finite number");
  return x;
}

double positive_at(const json& value, const std::string& path) {
  const double x = number_at(value, path);
  if (!(x > 0.0)) schema_error(path, "must be positive");
  return x;
}

int integer_at(const json& value, const std::string& path) {
  if (!value.is_number_integer()) schema_error(path, "expected an integer");
  return value.get<int>();
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string()) schema_error(path, "expected a string");
  return value.get<std::string>();
}

const json& array_at(const json& value, const std::string& path) {
  if (!value.is_array()) schema_error(path, "expected an array");
  return value;
}

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

int dimension_at(const json& object, const std::string& path) {
  const int n = integer_at(require(object, path, "dimension"), path + ".dimension");
  if (n < 2) schema_error(path + ".dimension", "must be >= 2");
  return n;
}

WarpingModel parse_model(const json& m, const std::string& path) {
  const std::string type = string_at(require(m, path, "type"), path + ".type");
  if (type == "euclidean") {
    allow_keys(m, path, {"name", "type", "dimension"});
    return WarpingModel::euclidean(dimension_at(m, path));
  }
  if (type == "hyperbolic") {
    allow_keys(m, path, {"name", "type", "dimension", "curvature"});
    double kappa = 1.0;
    if (m.contains("curvature")) kappa = positive_at(m["curvature"], path + ".curvature");
    return WarpingModel::hyperbolic(dimension_at(m, path), kappa);
  }
  if (type == "jacobi") {
    allow_keys(m, path, {"name", "type", "dimension", "curvature", "grid_resolution"});
    const std::string cpath = path + ".curvature";
    const json& c = array_at(require(m, path, "curvature"), cpath);
    if (c.empty()) schema_error(cpath, "needs at least one coefficient");
    std::vector<double> coefficients;
    for (std::size_t i = 0; i < c.size(); ++i) coefficients.push_back(number_at(c[i], indexed(cpath, i)));
    double resolution = WarpingModel::kDefaultGridResolution;
    if (m.contains("grid_resolution")) {
      resolution = positive_at(m["grid_resolution"], path + ".grid_resolution");
    }
    // K(r) = c0 + c1 r + c2 r^2 + ...
    auto curvature = [coefficients](double r) {
      double k = 0.0;
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) k = k * r + *it;
      return k;
    };
    try {
      return WarpingModel::jacobi(dimension_at(m, path), curvature, resolution);
    } catch (const InvalidModelError& e) {
      schema_error(path, e.what());
    }
  }
  schema_error(path + ".type", "unknown model type \"" + type + "\"");
}

IsoperimetricFunction parse_profile(const json& h, const std::string& path,
                                    const std::map<std::string, WarpingModel>& models,
                                    const std::filesystem::path& base_dir) {
  const std::string type = string_at(require(h, path, "type"), path + ".type");
  if (type == "power_law") {
    allow_keys(h, path, {"name", "type", "D", "dimension"});
    return IsoperimetricFunction::power_law(positive_at(require(h, path, "D"), path + ".D"),
                                            dimension_at(h, path));
  }
  if (type == "model") {
    allow_keys(h, path, {"name", "type", "model"});
    const std::string name = string_at(require(h, path, "model"), path + ".model");
    const auto it = models.find(name);
    if (it == models.end()) {
      throw ConfigError("config: " + path + ".model: dangling reference to undeclared model \"" +
                        name + "\"");
    }
    return IsoperimetricFunction::model_profile(it->second);
  }
  if (type == "tabulated") {
    allow_keys(h, path, {"name", "type", "path", "samples"});
    if (h.contains("path") == h.contains("samples")) {
      schema_error(path, "tabulated profiles need exactly one of \"path\" or \"samples\"");
    }
    try {
      if (h.contains("path")) {
        std::filesystem::path file = string_at(h["path"], path + ".path");
        if (file.is_relative()) file = base_dir / file;
        return IsoperimetricFunction::load_csv(file);
      }
      const std::string spath = path + ".samples";
      const json& rows = array_at(h["samples"], spath);
      std::vector<double> s, H;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string rpath = indexed(spath, i);
        if (!rows[i].is_array() || rows[i].size() != 2) schema_error(rpath, "expected [s, H]");
        s.push_back(number_at(rows[i][0], rpath + "[0]"));
        H.push_back(number_at(rows[i][1], rpath + "[1]"));
      }
      return IsoperimetricFunction::tabulated(std::move(s), std::move(H));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      schema_error(path, e.what());
    }
  }
  schema_error(path + ".type", "unknown profile type \"" + type + "\"");
}

CheckKind parse_check(const std::string& name, const std::string& path) {
  for (CheckKind k : {CheckKind::torsion_bound, CheckKind::linfty_bound, CheckKind::lp_lower_bound,
                      CheckKind::energy_identity, CheckKind::coarea_chain}) {
    if (name == to_string(k)) return k;
  }
  schema_error(path, "unknown check \"" + name + "\"");
}

ScenarioSpec parse_scenario(const json& s, const std::string& path, const RunConfig& config) {
  ScenarioSpec spec;
  spec.id = string_at(require(s, path, "id"), path + ".id");
  if (spec.id.empty() || spec.id.find_first_of("/\\") != std::string::npos) {
    schema_error(path + ".id", "must be a nonempty name without path separators");
  }
  spec.check = parse_check(string_at(require(s, path, "check"), path + ".check"), path + ".check");

  switch (spec.check) {
    case CheckKind::torsion_bound:
      allow_keys(s, path, {"id", "check", "model", "profile", "radius"});
      break;
    case CheckKind::linfty_bound:
      allow_keys(s, path, {"id", "check", "model", "profile", "radius", "lambda", "p", "constant_scale"});
      break;
    case CheckKind::lp_lower_bound:
      allow_keys(s, path, {"id", "check", "model", "profile", "radius", "p", "gamma"});
      break;
    case CheckKind::energy_identity:
      allow_keys(s, path, {"id", "check", "model", "radius"});
      break;
    case CheckKind::coarea_chain:
      allow_keys(s, path, {"id", "check", "model", "profile", "radius", "levels"});
      break;
  }

  spec.model = string_at(require(s, path, "model"), path + ".model");
  bool model_found = false;
  for (const auto& m : config.models) model_found = model_found || m.name == spec.model;
  if (!model_found) {
    throw ConfigError("config: " + path + ".model: dangling reference to undeclared model \"" +
                      spec.model + "\"");
  }
  if (spec.check != CheckKind::energy_identity) {
    spec.profile = string_at(require(s, path, "profile"), path + ".profile");
    bool found = false;
    for (const auto& h : config.profiles) found = found || h.name == spec.profile;
    if (!found) {
      throw ConfigError("config: " + path + ".profile: dangling reference to undeclared profile \"" +
                        spec.profile + "\"");
    }
  }

  if (s.contains("radius")) spec.radius = positive_at(s["radius"], path + ".radius");
  if (s.contains("lambda")) spec.lambda = positive_at(s["lambda"], path + ".lambda");
  if (spec.check == CheckKind::linfty_bound) {
    if (spec.radius.has_value() == spec.lambda.has_value()) {
      schema_error(path, "linfty_bound needs exactly one of \"radius\" (ball) or \"lambda\" (whole model)");
    }
  } else if (!spec.radius) {
    schema_error(path + ".radius", "missing required key");
  }

  if (s.contains("p")) spec.p = number_at(s["p"], path + ".p");
  if (!(spec.p >= 2.0)) schema_error(path + ".p", "must be >= 2");
  if (s.contains("gamma")) {
    spec.gamma = number_at(s["gamma"], path + ".gamma");
    if (!(spec.gamma >= 0.0)) schema_error(path + ".gamma", "must be nonnegative");
  }
  if (s.contains("constant_scale")) {
    spec.constant_scale = positive_at(s["constant_scale"], path + ".constant_scale");
  }
  if (s.contains("levels")) {
    spec.levels = integer_at(s["levels"], path + ".levels");
    if (spec.levels < 1) schema_error(path + ".levels", "must be >= 1");
  }
  return spec;
}

// nlohmann reports a byte offset; translate it to line and column.
std::string describe_position(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::torsion_bound:
      return "torsion_bound";
    case CheckKind::linfty_bound:
      return "linfty_bound";
    case CheckKind::lp_lower_bound:
      return "lp_lower_bound";
    case CheckKind::energy_identity:
      return "energy_identity";
    case CheckKind::coarea_chain:
      return "coarea_chain";
  }
  return "";
}

const WarpingModel& RunConfig::model(const std::string& name) const {
  for (const auto& m : models) {
    if (m.name == name) return m.model;
  }
  throw ConfigError("undeclared model \"" + name + "\"");
}

const IsoperimetricFunction& RunConfig::profile(const std::string& name) const {
  for (const auto& h : profiles) {
    if (h.name == name) return h.profile;
  }
  throw ConfigError("undeclared profile \"" + name + "\"");
}

RunConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    const auto colon = what.find("syntax error");
    throw ConfigError("config: parse error at " + describe_position(text, e.byte) + ": " +
                      (colon == std::string::npos ? what : what.substr(colon)));
  }
  allow_keys(root, "$", {"schema", "output_dir", "tolerance", "jobs", "models", "profiles", "scenarios"});
  const json& schema = require(root, "$", "schema");
  if (!schema.is_number_integer() || schema.get<int>() != 1) {
    schema_error("$.schema", "unsupported schema version (expected 1)");
  }

  RunConfig config;
  if (root.contains("output_dir")) {
    std::filesystem::path out = string_at(root["output_dir"], "$.output_dir");
    config.output_dir = out.is_relative() ? base_dir / out : out;
  } else {
    config.output_dir = base_dir / config.output_dir;
  }
  if (root.contains("tolerance")) {
    config.tol.global = positive_at(root["tolerance"], "$.tolerance");
    if (config.tol.global >= 1.0) schema_error("$.tolerance", "must be below 1");
  }
  if (root.contains("jobs")) {
    config.jobs = integer_at(root["jobs"], "$.jobs");
    if (config.jobs < 1) schema_error("$.jobs", "must be >= 1");
  }

  std::map<std::string, WarpingModel> models;
  const json& model_list = array_at(require(root, "$", "models"), "$.models");
  for (std::size_t i = 0; i < model_list.size(); ++i) {
    const std::string path = indexed("$.models", i);
    const std::string name = string_at(require(model_list[i], path, "name"), path + ".name");
    if (models.count(name)) schema_error(path + ".name", "duplicate model name \"" + name + "\"");
    WarpingModel model = parse_model(model_list[i], path);
    models.emplace(name, model);
    config.models.push_back({name, std::move(model)});
  }

  std::set<std::string> profile_names;
  const json& profile_list = array_at(require(root, "$", "profiles"), "$.profiles");
  for (std::size_t i = 0; i < profile_list.size(); ++i) {
    const std::string path = indexed("$.profiles", i);
    const std::string name = string_at(require(profile_list[i], path, "name"), path + ".name");
    if (!profile_names.insert(name).second) {
      schema_error(path + ".name", "duplicate profile name \"" + name + "\"");
    }
    config.profiles.push_back({name, parse_profile(profile_list[i], path, models, base_dir)});
  }

  std::set<std::string> ids;
  const json& scenario_list = array_at(require(root, "$", "scenarios"), "$.scenarios");
  for (std::size_t i = 0; i < scenario_list.size(); ++i) {
    const std::string path = indexed("$.scenarios", i);
    ScenarioSpec spec = parse_scenario(scenario_list[i], path, config);
    if (!ids.insert(spec.id).second) schema_error(path + ".id", "duplicate scenario id \"" + spec.id + "\"");
    config.scenarios.push_back(std::move(spec));
  }
  return config;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  std::filesystem::path base = path.parent_path();
  if (base.empty()) base = ".";
  return parse_config_text(text.str(), base);
}

double global_tolerance_from_env(double fallback) {
  const char* raw = std::getenv("SPECBOUND_TOL");
  if (raw == nullptr || *raw == '\0') return fallback;
  const std::string text(raw);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !(value > 0.0) || !(value < 1.0)) {
    throw ConfigError("SPECBOUND_TOL: expected a number in (0, 1), got \"" + text + "\"");
  }
  return value;
}

}  // namespace specbound
