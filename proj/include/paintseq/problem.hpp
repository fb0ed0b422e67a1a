#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "paintseq/errors.hpp"

namespace paintseq {

/// Dense row-major square matrix, 0-based. Row r corresponds to vehicle
/// id r+1 wherever a matrix is keyed by vehicles.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, T fill = T{})
      : n_(n), cells_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }

  T& at(int row, int col) { return cells_[static_cast<std::size_t>(row) * n_ + col]; }
  const T& at(int row, int col) const {
    return cells_[static_cast<std::size_t>(row) * n_ + col];
  }

  const std::vector<T>& cells() const { return cells_; }

 private:
  int n_ = 0;
  std::vector<T> cells_;
};

/// One vehicle awaiting paint. Ids within an instance are unique and
/// contiguous from 1 to n; color and style are non-empty labels. The
/// metadata map is opaque to every computation in this library.
struct Vehicle {
  int id = 0;
  std::string color;
  std::string style;
  std::map<std::string, std::string> metadata;
};

/// Currency per color changeover and per paint repair. Both finite, >= 0.
struct CostRates {
  double changeover = 0.0;
  double repair = 0.0;
};

/// Lookup table of repair probabilities: probability(i, j) is the chance
/// that vehicle i needs rework when painted immediately after vehicle j.
/// The table is directional and in general asymmetric. Missing entries are
/// stored as NaN so validation can name them.
class RepairModel {
 public:
  RepairModel() = default;
  explicit RepairModel(int n)
      : table_(n, std::numeric_limits<double>::quiet_NaN()) {}

  int size() const { return table_.size(); }

  /// Probability that `current` needs repair after `previous` (1-based ids).
  double probability(int current, int previous) const {
    return table_.at(current - 1, previous - 1);
  }

  void set(int current, int previous, double p) {
    table_.at(current - 1, previous - 1) = p;
  }

  const SquareMatrix<double>& table() const { return table_; }

 private:
  SquareMatrix<double> table_;
};

/// A sequencing problem: vehicles, cost rates, the repair-probability
/// table, and the color-changeover indicator matrix. The changeover matrix
/// is derivable from the colors (see build_changeover_matrix); it is kept
/// materialized so external supplies can be validated against the colors.
struct ProblemInstance {
  std::vector<Vehicle> vehicles;
  CostRates rates;
  RepairModel repair;
  SquareMatrix<int> changeover;

  int size() const { return static_cast<int>(vehicles.size()); }

  /// 1 iff vehicles i and j have different colors (1-based ids).
  int changeover_between(int i, int j) const { return changeover.at(i - 1, j - 1); }

  /// Repair probability of i given predecessor j (1-based ids).
  double repair_probability(int i, int j) const { return repair.probability(i, j); }
};

/// A feasible sequence with its cost decomposition. `order[t-1]` is the
/// vehicle id painted at position t. total_cost = changeover_cost +
/// repair_cost; the first position contributes no pairwise cost.
struct SequencePlan {
  std::vector<int> order;
  double changeover_cost = 0.0;
  double repair_cost = 0.0;
  double total_cost = 0.0;
};

namespace detail {

/// Checks ids are unique and contiguous 1..n. Returns an empty string when
/// valid, else a description of the first problem found.
inline std::string check_vehicle_ids(const std::vector<Vehicle>& vehicles) {
  if (vehicles.empty()) return "instance has no vehicles";
  const int n = static_cast<int>(vehicles.size());
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (const Vehicle& v : vehicles) {
    if (v.id < 1 || v.id > n)
      return "vehicle id " + std::to_string(v.id) + " outside 1.." + std::to_string(n);
    if (seen[v.id]) return "duplicate vehicle id " + std::to_string(v.id);
    seen[v.id] = true;
  }
  return {};
}

/// True iff `order` is a permutation of 1..n.
inline bool is_permutation_of_ids(const std::vector<int>& order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int id : order) {
    if (id < 1 || id > n || seen[id]) return false;
    seen[id] = true;
  }
  return true;
}

}  // namespace detail

/// Derives the binary changeover matrix from vehicle colors: entry (i, j)
/// is 1 iff the colors of vehicles i and j differ. Symmetric, zero
/// diagonal. Throws InvalidInstanceError on empty input or bad ids.
inline SquareMatrix<int> build_changeover_matrix(const std::vector<Vehicle>& vehicles) {
  if (const std::string problem = detail::check_vehicle_ids(vehicles); !problem.empty())
    throw InvalidInstanceError(problem);
  const int n = static_cast<int>(vehicles.size());
  std::vector<const std::string*> color_of(static_cast<std::size_t>(n) + 1);
  for (const Vehicle& v : vehicles) color_of[v.id] = &v.color;
  SquareMatrix<int> q(n, 0);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      q.at(i - 1, j - 1) = (i != j && *color_of[i] != *color_of[j]) ? 1 : 0;
  return q;
}

/// Builds an instance and derives its changeover matrix from the colors.
inline ProblemInstance make_instance(std::vector<Vehicle> vehicles, CostRates rates,
                                     RepairModel repair) {
  ProblemInstance instance;
  instance.changeover = build_changeover_matrix(vehicles);
  instance.vehicles = std::move(vehicles);
  instance.rates = rates;
  instance.repair = std::move(repair);
  return instance;
}

/// Fills a complete repair table by evaluating `rule(current, previous)`
/// for every ordered pair of distinct vehicles. Lets instances be written
/// compactly from attribute tuples instead of n*(n-1) explicit entries.
inline RepairModel repair_from_rule(
    const std::vector<Vehicle>& vehicles,
    const std::function<double(const Vehicle& current, const Vehicle& previous)>& rule) {
  if (const std::string problem = detail::check_vehicle_ids(vehicles); !problem.empty())
    throw InvalidInstanceError(problem);
  const int n = static_cast<int>(vehicles.size());
  RepairModel model(n);
  for (const Vehicle& current : vehicles)
    for (const Vehicle& previous : vehicles)
      if (current.id != previous.id)
        model.set(current.id, previous.id, rule(current, previous));
  return model;
}

/// Number of adjacent color changes in `order`.
inline int count_changeovers(const ProblemInstance& instance, const std::vector<int>& order) {
  int count = 0;
  for (std::size_t t = 1; t < order.size(); ++t)
    count += instance.changeover_between(order[t], order[t - 1]);
  return count;
}

/// Evaluates the cost of painting the vehicles in `order`. Position t >= 2
/// pays changeover_rate for a color change from its predecessor plus
/// repair_rate weighted by the repair probability of the (current,
/// previous) pair; position 1 pays nothing. Throws InvalidSequenceError if
/// `order` is not a permutation of the instance's ids.
inline SequencePlan sequence_cost(const ProblemInstance& instance,
                                  const std::vector<int>& order) {
  if (!detail::is_permutation_of_ids(order, instance.size()))
    throw InvalidSequenceError("order is not a permutation of vehicle ids 1.." +
                               std::to_string(instance.size()));
  SequencePlan plan;
  plan.order = order;
  double changes = 0.0;
  double repair_sum = 0.0;
  for (std::size_t t = 1; t < order.size(); ++t) {
    const int current = order[t];
    const int previous = order[t - 1];
    changes += instance.changeover_between(current, previous);
    repair_sum += instance.repair_probability(current, previous);
  }
  plan.changeover_cost = instance.rates.changeover * changes;
  plan.repair_cost = instance.rates.repair * repair_sum;
  plan.total_cost = plan.changeover_cost + plan.repair_cost;
  return plan;
}

/// Checks every type invariant of an instance and returns the list of
/// violations found (empty means valid). Violations are data, not
/// exceptions, so callers can report all of them at once.
inline std::vector<std::string> validate_instance(const ProblemInstance& instance) {
  std::vector<std::string> violations;
  const int n = instance.size();

  if (n == 0) {
    violations.push_back("instance has no vehicles");
    return violations;
  }
  if (const std::string problem = detail::check_vehicle_ids(instance.vehicles);
      !problem.empty())
    violations.push_back(problem);
  for (const Vehicle& v : instance.vehicles) {
    if (v.color.empty())
      violations.push_back("vehicle " + std::to_string(v.id) + " has an empty color");
    if (v.style.empty())
      violations.push_back("vehicle " + std::to_string(v.id) + " has an empty style");
  }

  if (!(std::isfinite(instance.rates.changeover) && instance.rates.changeover >= 0.0))
    violations.push_back("changeover rate must be finite and >= 0");
  if (!(std::isfinite(instance.rates.repair) && instance.rates.repair >= 0.0))
    violations.push_back("repair rate must be finite and >= 0");

  if (instance.repair.size() != n) {
    violations.push_back("repair table is " + std::to_string(instance.repair.size()) +
                         "x" + std::to_string(instance.repair.size()) + ", expected " +
                         std::to_string(n) + "x" + std::to_string(n));
  } else {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const double p = instance.repair.probability(i, j);
        const std::string pair =
            "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
        if (std::isnan(p))
          violations.push_back("missing repair probability for pair " + pair);
        else if (!(p >= 0.0 && p <= 1.0))
          violations.push_back("repair probability " + std::to_string(p) +
                               " for pair " + pair + " outside [0, 1]");
      }
    }
  }

  if (instance.changeover.size() != n) {
    violations.push_back("changeover matrix is " +
                         std::to_string(instance.changeover.size()) + "x" +
                         std::to_string(instance.changeover.size()) + ", expected " +
                         std::to_string(n) + "x" + std::to_string(n));
  } else if (detail::check_vehicle_ids(instance.vehicles).empty()) {
    std::vector<const std::string*> color_of(static_cast<std::size_t>(n) + 1);
    for (const Vehicle& v : instance.vehicles) color_of[v.id] = &v.color;
    bool symmetric = true;
    bool diagonal_zero = true;
    bool binary = true;
    bool matches_colors = true;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const int q = instance.changeover.at(i - 1, j - 1);
        if (q != 0 && q != 1) binary = false;
        if (i == j && q != 0) diagonal_zero = false;
        if (q != instance.changeover.at(j - 1, i - 1)) symmetric = false;
        if (i != j && q != (*color_of[i] != *color_of[j] ? 1 : 0)) matches_colors = false;
      }
    }
    if (!binary) violations.push_back("changeover matrix entries must be 0 or 1");
    if (!diagonal_zero) violations.push_back("changeover matrix diagonal must be zero");
    if (!symmetric) violations.push_back("changeover matrix must be symmetric");
    if (!matches_colors)
      violations.push_back("changeover matrix disagrees with vehicle colors");
  }

  return violations;
}

}  // namespace paintseq
