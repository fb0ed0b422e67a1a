#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "paintseq/errors.hpp"
#include "paintseq/exact.hpp"
#include "paintseq/problem.hpp"
#include "paintseq/qaoa.hpp"
#include "paintseq/qubo.hpp"

namespace paintseq {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& object,
                                           const std::string& key) {
  const auto it = object.find(key);
  if (it == object.end()) throw ParseError("missing field \"" + key + "\"");
  return *it;
}

inline void check_schema_version(const nlohmann::json& object) {
  const auto& version = require_field(object, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    throw ParseError("unsupported schema_version (expected " +
                     std::to_string(kSchemaVersion) + ")");
}

inline std::string fixed6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

}  // namespace detail

/// Renders a bitstring with variable k at string position k.
inline std::string bits_to_string(const std::vector<int>& bits) {
  std::string text(bits.size(), '0');
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) text[k] = '1';
  return text;
}

inline std::string order_to_string(const std::vector<int>& order) {
  std::string text;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0) text += '-';
    text += std::to_string(order[k]);
  }
  return text;
}

/// Parses the instance schema: "vehicles" with id/color/style and optional
/// string metadata, "rates" with changeover/repair, and
/// "repair_probabilities" as (from = preceding, to = current, p) triples.
/// The changeover matrix is always derived from the colors. Structural
/// problems throw ParseError; id problems surface as InvalidInstanceError.
inline ProblemInstance parse_instance(const nlohmann::json& root) {
  if (!root.is_object()) throw ParseError("instance file must hold a JSON object");
  detail::check_schema_version(root);

  const auto& vehicles_json = detail::require_field(root, "vehicles");
  if (!vehicles_json.is_array() || vehicles_json.empty())
    throw ParseError("\"vehicles\" must be a non-empty array");
  std::vector<Vehicle> vehicles;
  vehicles.reserve(vehicles_json.size());
  for (const auto& entry : vehicles_json) {
    Vehicle vehicle;
    vehicle.id = detail::require_field(entry, "id").get<int>();
    vehicle.color = detail::require_field(entry, "color").get<std::string>();
    vehicle.style = detail::require_field(entry, "style").get<std::string>();
    if (const auto it = entry.find("metadata"); it != entry.end()) {
      if (!it->is_object()) throw ParseError("vehicle metadata must be an object");
      for (const auto& [key, value] : it->items()) {
        if (!value.is_string())
          throw ParseError("vehicle metadata values must be strings");
        vehicle.metadata[key] = value.get<std::string>();
      }
    }
    vehicles.push_back(std::move(vehicle));
  }

  const auto& rates_json = detail::require_field(root, "rates");
  CostRates rates;
  rates.changeover = detail::require_field(rates_json, "changeover").get<double>();
  rates.repair = detail::require_field(rates_json, "repair").get<double>();

  const int n = static_cast<int>(vehicles.size());
  RepairModel repair(n);
  const auto& probabilities = detail::require_field(root, "repair_probabilities");
  if (!probabilities.is_array())
    throw ParseError("\"repair_probabilities\" must be an array");
  for (const auto& entry : probabilities) {
    const int from = detail::require_field(entry, "from").get<int>();
    const int to = detail::require_field(entry, "to").get<int>();
    const double p = detail::require_field(entry, "p").get<double>();
    if (from < 1 || from > n || to < 1 || to > n)
      throw ParseError("repair probability references unknown vehicle id (from=" +
                       std::to_string(from) + ", to=" + std::to_string(to) + ")");
    if (from == to)
      throw ParseError("repair probability pairs must reference distinct vehicles");
    if (!std::isnan(repair.probability(to, from)))
      throw ParseError("duplicate repair probability for (from=" + std::to_string(from) +
                       ", to=" + std::to_string(to) + ")");
    repair.set(to, from, p);
  }

  return make_instance(std::move(vehicles), rates, std::move(repair));
}

inline ProblemInstance load_instance(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw ParseError("cannot open instance file: " + path);
  nlohmann::json root;
  try {
    input >> root;
  } catch (const nlohmann::json::exception& error) {
    throw ParseError("malformed JSON in " + path + ": " + error.what());
  }
  try {
    return parse_instance(root);
  } catch (const nlohmann::json::exception& error) {
    throw ParseError("bad instance data in " + path + ": " + error.what());
  }
}

inline nlohmann::json instance_to_json(const ProblemInstance& instance) {
  nlohmann::json root;
  root["schema_version"] = kSchemaVersion;
  root["vehicles"] = nlohmann::json::array();
  for (const Vehicle& vehicle : instance.vehicles) {
    nlohmann::json entry{{"id", vehicle.id},
                         {"color", vehicle.color},
                         {"style", vehicle.style}};
    if (!vehicle.metadata.empty()) entry["metadata"] = vehicle.metadata;
    root["vehicles"].push_back(std::move(entry));
  }
  root["rates"] = {{"changeover", instance.rates.changeover},
                   {"repair", instance.rates.repair}};
  root["repair_probabilities"] = nlohmann::json::array();
  const int n = instance.size();
  for (int to = 1; to <= n; ++to)
    for (int from = 1; from <= n; ++from)
      if (to != from && !std::isnan(instance.repair.probability(to, from)))
        root["repair_probabilities"].push_back(
            {{"from", from}, {"to", to}, {"p", instance.repair.probability(to, from)}});
  return root;
}

inline nlohmann::json plan_to_json(const SequencePlan& plan,
                                   const ProblemInstance& instance) {
  return {{"order", plan.order},
          {"changeover_cost", plan.changeover_cost},
          {"repair_cost", plan.repair_cost},
          {"total_cost", plan.total_cost},
          {"changeover_count", count_changeovers(instance, plan.order)}};
}

/// QuboModel export. The bit-index mapping is implicit: variable
/// (vehicle i, position t) lives at flat index (i-1)*n + (t-1).
inline nlohmann::json qubo_to_json(const QuboModel& model) {
  nlohmann::json root;
  root["schema_version"] = kSchemaVersion;
  root["n"] = model.n;
  root["penalty"] = model.penalty;
  root["constant"] = model.constant;
  root["linear"] = model.linear;
  root["quadratic"] = nlohmann::json::array();
  for (const auto& [key, coeff] : model.quadratic)
    root["quadratic"].push_back({{"u", key.first}, {"v", key.second}, {"coeff", coeff}});
  return root;
}

inline nlohmann::json qaoa_result_to_json(const QaoaResult& result, const QuboModel& model,
                                          int top_k) {
  nlohmann::json root;
  root["schema_version"] = kSchemaVersion;
  root["levels"] = result.best_params.levels;
  root["gammas"] = result.best_params.gammas;
  root["betas"] = result.best_params.betas;
  root["best_expectation"] = result.best_expectation;

  root["optimizer_trace"] = nlohmann::json::array();
  for (const TracePoint& point : result.optimizer_trace)
    root["optimizer_trace"].push_back(
        {{"iteration", point.iteration}, {"expectation", point.expectation}});

  // Aggregate the raw draws; report the top-k by count, then basis index.
  std::map<std::uint64_t, int> counts;
  for (const std::uint64_t basis : result.samples) ++counts[basis];
  std::vector<std::pair<std::uint64_t, int>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (top_k >= 0 && ranked.size() > static_cast<std::size_t>(top_k))
    ranked.resize(top_k);

  const int shots = static_cast<int>(result.samples.size());
  root["shots"] = shots;
  root["top_samples"] = nlohmann::json::array();
  for (const auto& [basis, count] : ranked) {
    const std::vector<int> bits = bits_from_index(basis, model.num_variables());
    root["top_samples"].push_back(
        {{"bits", bits_to_string(bits)},
         {"count", count},
         {"probability", static_cast<double>(count) / shots},
         {"feasible", decode(model, bits).feasible()}});
  }

  if (result.best_feasible)
    root["best_feasible"] = plan_to_json(*result.best_feasible, model.instance);
  else
    root["best_feasible"] = nullptr;
  return root;
}

/// Sweep table as CSV, costs at fixed 6 decimals, order dash-separated.
inline std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::string csv =
      "repair_rate,total_cost,changeover_cost,repair_cost,changeover_count,order\n";
  for (const SweepRecord& record : records) {
    csv += detail::fixed6(record.repair_rate) + "," + detail::fixed6(record.total_cost) +
           "," + detail::fixed6(record.changeover_cost) + "," +
           detail::fixed6(record.repair_cost) + "," +
           std::to_string(record.changeover_count) + "," +
           order_to_string(record.optimal_order) + "\n";
  }
  return csv;
}

inline nlohmann::json sweep_summary_to_json(const std::vector<SweepRecord>& records) {
  nlohmann::json root;
  root["schema_version"] = kSchemaVersion;
  root["records"] = records.size();
  root["tipping_points"] = detect_tipping_points(records);
  return root;
}

/// Probability dump of a state: basis_index, bitstring, probability.
inline std::string probabilities_to_csv(const Statevector& state) {
  std::string csv = "basis_index,bitstring,probability\n";
  for (std::uint64_t b = 0; b < state.dimension(); ++b) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12e", std::norm(state.amplitudes[b]));
    csv += std::to_string(b) + "," +
           bits_to_string(bits_from_index(b, state.num_qubits)) + "," + buffer + "\n";
  }
  return csv;
}

}  // namespace paintseq
