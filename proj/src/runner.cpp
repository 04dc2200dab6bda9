#include "specbound/runner.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <thread>

#include "specbound/bound_engine.hpp"

namespace specbound {

namespace {

ScenarioOutcome run_scenario(const RunConfig& config, const ScenarioSpec& spec,
                             const std::map<std::string, AifEvaluator>& aifs) {
  const WarpingModel& model = config.model(spec.model);
  const Tolerances& tol = config.tol;
  ScenarioOutcome out{not_applicable(spec.id, to_string(spec.check), ""), std::nullopt};
  const double radius = spec.radius.value_or(0.0);

  switch (spec.check) {
    case CheckKind::torsion_bound:
      out.report = torsion_bound_check(model, radius, aifs.at(spec.profile), tol);
      out.radial = solve_torsion(model, radius, tol.quadrature());
      break;
    case CheckKind::coarea_chain:
      out.report = coarea_chain_check(model, radius, aifs.at(spec.profile), spec.levels, tol);
      out.radial = solve_torsion(model, radius, tol.quadrature());
      break;
    case CheckKind::lp_lower_bound: {
      DirichletEigenpair pair = dirichlet_eigenpair(model, radius, tol.shooting());
      out.report = lp_lower_bound_check(pair, spec.gamma, spec.p, aifs.at(spec.profile), tol);
      out.radial = std::move(pair.eigenfunction);
      break;
    }
    case CheckKind::energy_identity: {
      DirichletEigenpair pair = dirichlet_eigenpair(model, radius, tol.shooting());
      out.report = energy_identity_check(pair, tol);
      out.radial = std::move(pair.eigenfunction);
      break;
    }
    case CheckKind::linfty_bound: {
      BoundScenario scenario{spec.id,
                             model,
                             aifs.at(spec.profile),
                             spec.p,
                             BallDomain{radius},
                             spec.constant_scale,
                             tol};
      if (spec.lambda) scenario.domain = WholeManifoldDomain{*spec.lambda};
      out.report = verify_linfty_bound(scenario);
      if (spec.lambda) {
        WholeManifoldSolution whole = solve_whole_manifold(model, *spec.lambda, tol.ode());
        out.radial = std::move(whole.u);
      } else {
        out.radial = dirichlet_eigenpair(model, radius, tol.shooting()).eigenfunction;
      }
      break;
    }
  }
  out.report.scenario = spec.id;
  return out;
}

}  // namespace

std::vector<VerificationReport> RunResult::reports() const {
  std::vector<VerificationReport> out;
  out.reserve(outcomes.size());
  for (const auto& o : outcomes) out.push_back(o.report);
  return out;
}

int exit_code_for(const std::vector<VerificationReport>& reports) {
  int code = kExitOk;
  for (const auto& r : reports) {
    if (r.status == CheckStatus::error) return kExitNumeric;
    if (r.status == CheckStatus::violated) code = kExitViolation;
  }
  return code;
}

RunResult execute(const RunConfig& config) {
  // One evaluator per profile so scenarios share anchor caches.
  std::map<std::string, AifEvaluator> aifs;
  for (const auto& h : config.profiles) {
    aifs.emplace(h.name, AifEvaluator(h.profile, config.tol.quadrature()));
  }

  const std::size_t count = config.scenarios.size();
  std::vector<std::optional<ScenarioOutcome>> slots(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const ScenarioSpec& spec = config.scenarios[i];
      try {
        slots[i] = run_scenario(config, spec, aifs);
      } catch (const std::exception& e) {
        slots[i] = ScenarioOutcome{failed(spec.id, to_string(spec.check), e.what()), std::nullopt};
      }
    }
  };

  const std::size_t threads = std::min<std::size_t>(std::max(config.jobs, 1), std::max<std::size_t>(count, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  RunResult result;
  for (auto& slot : slots) result.outcomes.push_back(std::move(*slot));
  result.exit_code = exit_code_for(result.reports());
  return result;
}

int run(const RunConfig& config) {
  const RunResult result = execute(config);
  std::filesystem::create_directories(config.output_dir);
  const auto reports = result.reports();
  {
    std::ofstream json(config.output_dir / "report.json", std::ios::binary);
    write_json(json, reports);
  }
  {
    std::ofstream csv(config.output_dir / "report.csv", std::ios::binary);
    write_csv(csv, reports);
  }
  for (const auto& o : result.outcomes) {
    if (o.radial) o.radial->write_csv(config.output_dir / ("radial_" + o.report.scenario + ".csv"));
  }
  return result.exit_code;
}

}  // namespace specbound
