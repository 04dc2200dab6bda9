#include "specbound/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "specbound/bound_engine.hpp"
#include "specbound/config.hpp"
#include "specbound/numerics/format.hpp"
#include "specbound/radial_solver.hpp"
#include "specbound/report.hpp"
#include "specbound/runner.hpp"

namespace specbound {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string::npos) return parts;
    start = end + 1;
  }
}

double to_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError(what + ": not a number: \"" + text + "\"");
  }
  return value;
}

int to_dimension(const std::string& text, const std::string& what) {
  const double value = to_number(text, what);
  if (value != std::floor(value) || value < 2 || value > 64) {
    throw ConfigError(what + ": dimension must be an integer >= 2");
  }
  return static_cast<int>(value);
}

struct Names {
  std::optional<RunConfig> config;

  WarpingModel model(const std::string& name) const {
    if (config) {
      for (const auto& m : config->models) {
        if (m.name == name) return m.model;
      }
    }
    return parse_model_name(name);
  }

  IsoperimetricFunction profile(const std::string& name, const WarpingModel& model) const {
    if (config) {
      for (const auto& h : config->profiles) {
        if (h.name == name) return h.profile;
      }
    }
    return parse_profile_name(name, model);
  }
};

Tolerances tolerances(const std::optional<RunConfig>& config) {
  Tolerances tol = config ? config->tol : Tolerances{};
  tol.global = global_tolerance_from_env(tol.global);
  return tol;
}

}  // namespace

WarpingModel parse_model_name(const std::string& name) {
  const auto parts = split(name, ':');
  if (parts[0] == "euclidean" && parts.size() == 2) {
    return WarpingModel::euclidean(to_dimension(parts[1], "model " + name));
  }
  if (parts[0] == "hyperbolic" && (parts.size() == 2 || parts.size() == 3)) {
    const double kappa = parts.size() == 3 ? to_number(parts[2], "model " + name) : 1.0;
    if (!(kappa > 0.0)) throw ConfigError("model " + name + ": curvature must be positive");
    return WarpingModel::hyperbolic(to_dimension(parts[1], "model " + name), kappa);
  }
  throw ConfigError("unknown model \"" + name + "\" (expected euclidean:N or hyperbolic:N[:kappa])");
}

IsoperimetricFunction parse_profile_name(const std::string& name, const WarpingModel& model) {
  if (name == "croke2") return IsoperimetricFunction::power_law(std::sqrt(4.0 * M_PI), 2);
  if (name == "model") return IsoperimetricFunction::model_profile(model);
  if (name.rfind("tabulated:", 0) == 0) return IsoperimetricFunction::load_csv(name.substr(10));
  const auto parts = split(name, ':');
  if (parts[0] == "power" && parts.size() == 3) {
    const double D = to_number(parts[1], "profile " + name);
    if (!(D > 0.0)) throw ConfigError("profile " + name + ": D must be positive");
    return IsoperimetricFunction::power_law(D, to_dimension(parts[2], "profile " + name));
  }
  throw ConfigError("unknown profile \"" + name +
                    "\" (expected power:D:N, croke2, model or tabulated:<path>)");
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of isoperimetric eigenfunction bounds on model manifolds",
               "specbound"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int jobs = 0;
  double constant_scale = 1.0;
  auto* run_cmd = app.add_subcommand("run", "Run every scenario of a configuration file");
  run_cmd->add_option("--config", config_path, "JSON configuration")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  run_cmd->add_option("--jobs", jobs, "Worker threads (overrides jobs)")->check(CLI::PositiveNumber);
  run_cmd->add_option("--constant-scale", constant_scale,
                      "Multiply every L^inf bound constant (for testing the checks)")
      ->check(CLI::PositiveNumber);

  double lambda = 0.0;
  double p = 0.0;
  int dim = 0;
  double D = 0.0;
  auto* constant_cmd = app.add_subcommand("constant", "Closed-form bound constant for H(s) = D s^(1-1/n)");
  constant_cmd->add_option("--lambda", lambda)->required();
  constant_cmd->add_option("--p", p)->required();
  constant_cmd->add_option("--dim", dim)->required();
  constant_cmd->add_option("--D", D)->required();

  std::string model_name;
  double radius = 0.0;
  std::string names_config;
  auto* eigen_cmd = app.add_subcommand("eigen", "Principal Dirichlet eigenvalue of a geodesic ball");
  eigen_cmd->add_option("--model", model_name)->required();
  eigen_cmd->add_option("--radius", radius)->required();
  eigen_cmd->add_option("--config", names_config, "Resolve model names from this configuration");

  std::string profile_name;
  auto* torsion_cmd = app.add_subcommand("torsion", "Torsion bound check on a geodesic ball");
  torsion_cmd->add_option("--model", model_name)->required();
  torsion_cmd->add_option("--radius", radius)->required();
  torsion_cmd->add_option("--profile", profile_name)->required();
  torsion_cmd->add_option("--config", names_config, "Resolve model and profile names from this configuration");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "specbound: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*run_cmd) {
      RunConfig config = parse_config(config_path);
      config.tol.global = global_tolerance_from_env(config.tol.global);
      if (!out_dir.empty()) config.output_dir = out_dir;
      if (jobs > 0) config.jobs = jobs;
      if (constant_scale != 1.0) {
        for (auto& s : config.scenarios) {
          if (s.check == CheckKind::linfty_bound) s.constant_scale *= constant_scale;
        }
      }
      const int code = run(config);
      out << "wrote " << (config.output_dir / "report.csv").string() << " (" << config.scenarios.size()
          << " scenarios, exit " << code << ")\n";
      return code;
    }
    if (*constant_cmd) {
      const double c = hadamard_constant(lambda, p, dim, D);
      out << "{\"lambda\":" << numerics::format_number(lambda) << ",\"p\":" << numerics::format_number(p)
          << ",\"dim\":" << dim << ",\"D\":" << numerics::format_number(D)
          << ",\"constant\":" << numerics::format_number(c) << "}\n";
      return kExitOk;
    }

    Names names;
    if (!names_config.empty()) names.config = parse_config(names_config);
    const Tolerances tol = tolerances(names.config);
    const WarpingModel model = names.model(model_name);
    if (*eigen_cmd) {
      out << numerics::format_number(principal_dirichlet_eigenvalue(model, radius, tol.shooting()))
          << '\n';
      return kExitOk;
    }
    const AifEvaluator aif(names.profile(profile_name, model), tol.quadrature());
    VerificationReport report = torsion_bound_check(model, radius, aif, tol);
    report.scenario = "torsion";
    out << report_row_json(report) << '\n';
    return exit_code_for({report});
  } catch (const ConfigError& e) {
    err << "specbound: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "specbound: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidProfileError& e) {
    err << "specbound: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "specbound: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace specbound
