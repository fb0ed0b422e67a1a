// Command-line front end: instance validation, exact solving, QUBO export,
// QAOA runs, and repair-rate sweeps over instance JSON files.

#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paintseq/paintseq.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitInvalidInstance = 3;
constexpr int kExitNoFeasibleSample = 4;
constexpr int kExitUsage = 64;

struct GlobalOptions {
  std::string output;  // empty = stdout
  std::string format = "json";
  std::uint64_t seed = 1;
};

std::string iso8601_now() {
  const std::time_t now = std::time(nullptr);
  char buffer[32];
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

nlohmann::json make_manifest(const std::string& command, const std::string& instance_path,
                             std::uint64_t seed, nlohmann::json config) {
  return {{"command", command},
          {"instance_path", instance_path},
          {"config", std::move(config)},
          {"seed", seed},
          {"artifact_version", std::string(paintseq::kVersion)},
          {"timestamp", iso8601_now()}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw paintseq::ParseError("cannot open output file: " + path);
  out << text;
}

void write_result(const std::string& path, const nlohmann::json& root) {
  write_text(path, root.dump(2) + "\n");
}

/// Loads and fully validates an instance. Throws ParseError (data),
/// InvalidInstanceError (ids), or reports violations and exits 3.
paintseq::ProblemInstance load_checked_instance(const std::string& path) {
  paintseq::ProblemInstance instance = paintseq::load_instance(path);
  const auto violations = paintseq::validate_instance(instance);
  if (!violations.empty()) {
    std::cerr << "invalid instance " << path << ":\n";
    for (const auto& violation : violations) std::cerr << "  - " << violation << "\n";
    std::exit(kExitInvalidInstance);
  }
  return instance;
}

int run_validate(const std::string& instance_path, const GlobalOptions& global) {
  paintseq::ProblemInstance instance = paintseq::load_instance(instance_path);
  const auto violations = paintseq::validate_instance(instance);

  nlohmann::json result = {{"schema_version", paintseq::kSchemaVersion},
                           {"valid", violations.empty()},
                           {"violations", violations}};
  nlohmann::json root = {
      {"manifest", make_manifest("validate", instance_path, global.seed, {})},
      {"result", std::move(result)}};
  write_result(global.output, root);
  return violations.empty() ? kExitOk : kExitInvalidInstance;
}

int run_solve_exact(const std::string& instance_path, const GlobalOptions& global,
                    int enum_cap) {
  const auto instance = load_checked_instance(instance_path);
  const auto plan = paintseq::solve_exact(instance, enum_cap);

  if (global.format == "csv") {
    paintseq::SweepRecord record;
    record.repair_rate = instance.rates.repair;
    record.optimal_order = plan.order;
    record.total_cost = plan.total_cost;
    record.changeover_cost = plan.changeover_cost;
    record.repair_cost = plan.repair_cost;
    record.changeover_count = paintseq::count_changeovers(instance, plan.order);
    write_text(global.output, paintseq::sweep_to_csv({record}));
    return kExitOk;
  }

  nlohmann::json root = {{"manifest", make_manifest("solve-exact", instance_path,
                                                    global.seed,
                                                    {{"enum_cap", enum_cap}})},
                         {"result", paintseq::plan_to_json(plan, instance)}};
  root["result"]["schema_version"] = paintseq::kSchemaVersion;
  write_result(global.output, root);
  return kExitOk;
}

int run_build_qubo(const std::string& instance_path, const GlobalOptions& global,
                   std::optional<double> penalty) {
  const auto instance = load_checked_instance(instance_path);
  const double bound = paintseq::auto_penalty(instance);
  if (penalty && *penalty < bound)
    std::cerr << "warning: penalty " << *penalty << " is below the soundness bound "
              << bound << "; infeasible bitstrings may undercut feasible sequences\n";
  const auto model = paintseq::build_qubo(instance, penalty);

  std::cerr << "penalty: " << model.penalty << (penalty ? " (explicit)" : " (auto)")
            << "\n";
  nlohmann::json config = {{"penalty", penalty ? nlohmann::json(*penalty)
                                               : nlohmann::json("auto")}};
  nlohmann::json root = {
      {"manifest", make_manifest("build-qubo", instance_path, global.seed, config)},
      {"result", paintseq::qubo_to_json(model)}};
  write_result(global.output, root);
  return kExitOk;
}

struct QaoaFlags {
  paintseq::QaoaConfig config;
  int top_k = 10;
  int enum_cap = paintseq::kDefaultEnumerationCap;
  bool fallback_exact = false;
  std::string dump_probabilities;
};

int run_qaoa_command(const std::string& instance_path, const GlobalOptions& global,
                     QaoaFlags flags) {
  const auto instance = load_checked_instance(instance_path);
  const auto model = paintseq::build_qubo(instance);

  flags.config.seed = global.seed;
  paintseq::QaoaResult result = paintseq::optimize(model, flags.config);

  if (!flags.dump_probabilities.empty()) {
    const auto state = paintseq::ansatz_state(model, result.best_params);
    write_text(flags.dump_probabilities, paintseq::probabilities_to_csv(state));
  }

  std::optional<paintseq::SequencePlan> exact;
  if (instance.size() <= flags.enum_cap)
    exact = paintseq::solve_exact(instance, flags.enum_cap);

  std::string provenance = "qaoa-samples";
  bool no_feasible_sample = !result.best_feasible.has_value();
  if (no_feasible_sample && flags.fallback_exact && exact) {
    result.best_feasible = exact;
    provenance = "exact-fallback";
  }

  nlohmann::json payload = paintseq::qaoa_result_to_json(result, model, flags.top_k);
  if (result.best_feasible) payload["best_feasible"]["provenance"] = provenance;
  if (exact) {
    payload["exact_total_cost"] = exact->total_cost;
    payload["matches_exact"] =
        result.best_feasible &&
        std::abs(result.best_feasible->total_cost - exact->total_cost) <= 1e-9;
  } else {
    payload["matches_exact"] = nullptr;
  }

  nlohmann::json config = {{"levels", flags.config.levels},
                           {"shots", flags.config.shots},
                           {"grid", flags.config.optimizer.grid_resolution},
                           {"restarts", flags.config.optimizer.restarts},
                           {"max_iterations", flags.config.optimizer.max_iterations},
                           {"tolerance", flags.config.optimizer.convergence_tolerance},
                           {"top_k", flags.top_k},
                           {"fallback_exact", flags.fallback_exact},
                           {"enum_cap", flags.enum_cap}};
  nlohmann::json root = {
      {"manifest", make_manifest("run-qaoa", instance_path, global.seed, config)},
      {"result", std::move(payload)}};
  write_result(global.output, root);

  if (no_feasible_sample && provenance == "qaoa-samples") {
    std::cerr << "no feasible bitstring among " << flags.config.shots
              << " samples; re-run with --fallback-exact or more shots\n";
    return kExitNoFeasibleSample;
  }
  return kExitOk;
}

int run_sweep(const std::string& instance_path, const GlobalOptions& global,
              const std::vector<double>& rates, const std::string& summary_path,
              int enum_cap) {
  const auto instance = load_checked_instance(instance_path);
  const auto records = paintseq::sweep_repair_rate(instance, rates, enum_cap);

  write_text(global.output, paintseq::sweep_to_csv(records));

  nlohmann::json summary = {
      {"manifest",
       make_manifest("sweep", instance_path, global.seed,
                     {{"rates", rates}, {"enum_cap", enum_cap}})},
      {"result", paintseq::sweep_summary_to_json(records)}};
  std::string destination = summary_path;
  if (destination.empty() && !global.output.empty())
    destination = global.output + ".summary.json";
  write_result(destination, summary);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paint shop sequencing: changeover + repair cost optimization"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Random seed for sampling")->capture_default_str();
  app.add_option("--output", global.output, "Output file (default: stdout)");
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::string instance_path;
  int enum_cap = paintseq::kDefaultEnumerationCap;

  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("instance", instance_path, "Instance JSON path")->required();

  auto* solve_exact = app.add_subcommand("solve-exact", "Enumerate the optimal sequence");
  solve_exact->add_option("instance", instance_path, "Instance JSON path")->required();
  solve_exact->add_option("--enum-cap", enum_cap, "Largest n to enumerate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* build_qubo = app.add_subcommand("build-qubo", "Export the penalized model");
  build_qubo->add_option("instance", instance_path, "Instance JSON path")->required();
  double penalty_flag = 0.0;
  auto* penalty_option =
      build_qubo->add_option("--penalty", penalty_flag, "Explicit penalty weight (default: auto)")
          ->check(CLI::PositiveNumber);

  auto* run_qaoa = app.add_subcommand("run-qaoa", "Optimize with the embedded QAOA engine");
  run_qaoa->add_option("instance", instance_path, "Instance JSON path")->required();
  QaoaFlags qaoa;
  run_qaoa->add_option("--levels", qaoa.config.levels, "Ansatz depth p")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_qaoa->add_option("--shots", qaoa.config.shots, "Final readout samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_qaoa
      ->add_option("--restarts", qaoa.config.optimizer.restarts,
                   "Refinements seeded from the grid (0 = grid only)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run_qaoa->add_option("--grid", qaoa.config.optimizer.grid_resolution, "Seed grid resolution")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_qaoa
      ->add_option("--max-iterations", qaoa.config.optimizer.max_iterations,
                   "Refinement iteration budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_qaoa
      ->add_option("--tolerance", qaoa.config.optimizer.convergence_tolerance,
                   "Refinement convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_qaoa->add_option("--top-k", qaoa.top_k, "Sampled bitstrings to report")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run_qaoa->add_flag("--fallback-exact", qaoa.fallback_exact,
                     "Fall back to the exact answer when no sample is feasible");
  run_qaoa->add_option("--dump-probabilities", qaoa.dump_probabilities,
                       "Write the final probability vector to this CSV file");
  run_qaoa->add_option("--enum-cap", qaoa.enum_cap, "Largest n compared against enumeration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Re-solve across repair rates");
  sweep->add_option("instance", instance_path, "Instance JSON path")->required();
  std::vector<double> rates;
  std::vector<double> rate_range;
  std::string summary_path;
  auto* rates_option =
      sweep->add_option("--rates", rates, "Explicit repair rates")->delimiter(',');
  auto* range_option =
      sweep->add_option("--rate-range", rate_range, "START STOP STEP triple")
          ->expected(3);
  rates_option->excludes(range_option);
  sweep->add_option("--summary", summary_path,
                    "Tipping-point summary JSON (default: <output>.summary.json)");
  sweep->add_option("--enum-cap", enum_cap, "Largest n to enumerate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) {
      if (global.format == "csv") {
        std::cerr << "validate only supports --format json\n";
        return kExitUsage;
      }
      return run_validate(instance_path, global);
    }

    if (solve_exact->parsed()) return run_solve_exact(instance_path, global, enum_cap);

    if (build_qubo->parsed()) {
      std::optional<double> penalty;
      if (penalty_option->count() > 0) penalty = penalty_flag;
      if (global.format == "csv") {
        std::cerr << "build-qubo only supports --format json\n";
        return kExitUsage;
      }
      return run_build_qubo(instance_path, global, penalty);
    }

    if (run_qaoa->parsed()) {
      if (global.format == "csv") {
        std::cerr << "run-qaoa only supports --format json\n";
        return kExitUsage;
      }
      return run_qaoa_command(instance_path, global, qaoa);
    }

    if (sweep->parsed()) {
      if (rates.empty() && rate_range.empty()) {
        std::cerr << "sweep needs --rates or --rate-range\n";
        return kExitUsage;
      }
      std::vector<double> resolved = rates;
      if (!rate_range.empty()) {
        const double start = rate_range[0], stop = rate_range[1], step = rate_range[2];
        if (step <= 0.0 || stop < start) {
          std::cerr << "rate range must satisfy start <= stop, step > 0\n";
          return kExitUsage;
        }
        for (double rate = start; rate <= stop + 1e-9; rate += step)
          resolved.push_back(rate);
      }
      for (const double rate : resolved)
        if (!(rate >= 0.0)) {
          std::cerr << "repair rates must be >= 0\n";
          return kExitUsage;
        }
      return run_sweep(instance_path, global, resolved, summary_path, enum_cap);
    }
  } catch (const paintseq::ParseError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitDataError;
  } catch (const nlohmann::json::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitDataError;
  } catch (const paintseq::CapacityError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitCapacity;
  } catch (const paintseq::InvalidInstanceError& error) {
    std::cerr << "invalid instance: " << error.what() << "\n";
    return kExitInvalidInstance;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitUsage;
  }

  return kExitUsage;
}
