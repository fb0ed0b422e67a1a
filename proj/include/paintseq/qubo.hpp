#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paintseq/errors.hpp"
#include "paintseq/problem.hpp"

namespace paintseq {

/// Penalized unconstrained quadratic binary objective over n^2 variables.
///
/// Variable conventions (shared with the simulator — do not change one
/// without the other):
///   * x[k] = 1 means vehicle i is painted at position t, with the flat
///     index k = (i-1)*n + (t-1): row-major by vehicle, then position.
///   * A transition cost (changeover + expected repair for the ordered
///     pair "j precedes i") multiplies x_{j,t-1} * x_{i,t} for t = 2..n.
///     Same-vehicle pairs (i == j) carry no transition cost.
///   * Each row and column constraint (sum - 1)^2 is expanded with the
///     binary identity x^2 = x: squared diagonal terms fold into the
///     linear coefficients, so every variable gets -2*penalty linear,
///     same-row and same-column pairs get +2*penalty, and the constant
///     picks up 2*n*penalty.
///
/// Evaluating (constant, linear, quadratic) on a bitstring reproduces the
/// penalized objective exactly; on a feasible permutation bitstring the
/// penalty terms vanish and the value equals sequence_cost().total_cost.
struct QuboModel {
  int n = 0;
  double penalty = 0.0;
  double constant = 0.0;
  std::vector<double> linear;
  std::map<std::pair<int, int>, double> quadratic;  // keyed on (u, v) with u < v
  ProblemInstance instance;  // retained so decode/encode can price sequences

  int num_variables() const { return n * n; }

  /// Flat bit index of "vehicle i at position t" (both 1-based).
  int variable_index(int vehicle, int position) const {
    return (vehicle - 1) * n + (position - 1);
  }

  /// Inverse of variable_index: (vehicle, position), both 1-based.
  std::pair<int, int> vehicle_position(int index) const {
    return {index / n + 1, index % n + 1};
  }
};

/// Decode outcome: either a priced SequencePlan or an infeasibility marker
/// carrying the number of violated one-hot constraints.
struct DecodeResult {
  std::optional<SequencePlan> plan;
  int violated_constraints = 0;

  bool feasible() const { return plan.has_value(); }
};

/// Smallest penalty that provably separates infeasible bitstrings from
/// every feasible sequence: any violated constraint contributes at least
/// the penalty, while no sequence can cost more than (n-1) times the most
/// expensive transition. All transition costs are >= 0, so adding 1 on
/// top makes the separation strict.
inline double auto_penalty(const ProblemInstance& instance) {
  const int n = instance.size();
  double max_pair = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j)
        max_pair = std::max(max_pair,
                            instance.changeover_between(i, j) * instance.rates.changeover +
                                instance.repair_probability(i, j) * instance.rates.repair);
  return (n - 1) * max_pair + 1.0;
}

/// Compiles an instance into its penalized quadratic form. With no
/// explicit penalty the auto_penalty() bound is used. Throws
/// InvalidInstanceError when the instance fails validation and
/// std::invalid_argument for a non-positive penalty.
inline QuboModel build_qubo(const ProblemInstance& instance,
                            std::optional<double> penalty = std::nullopt) {
  if (const auto violations = validate_instance(instance); !violations.empty())
    throw InvalidInstanceError("invalid instance: " + violations.front());
  const double alpha = penalty.value_or(auto_penalty(instance));
  if (!(alpha > 0.0)) throw std::invalid_argument("penalty must be > 0");

  const int n = instance.size();
  QuboModel model;
  model.n = n;
  model.penalty = alpha;
  model.instance = instance;
  model.linear.assign(static_cast<std::size_t>(n) * n, 0.0);

  auto add_quadratic = [&model](int u, int v, double coeff) {
    if (u > v) std::swap(u, v);
    model.quadratic[{u, v}] += coeff;
  };

  // Transition costs on adjacent positions.
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const double pair_cost =
          instance.changeover_between(i, j) * instance.rates.changeover +
          instance.repair_probability(i, j) * instance.rates.repair;
      if (pair_cost == 0.0) continue;
      for (int t = 2; t <= n; ++t)
        add_quadratic(model.variable_index(j, t - 1), model.variable_index(i, t),
                      pair_cost);
    }
  }

  // Row constraints: one position per vehicle.
  for (int i = 1; i <= n; ++i) {
    model.constant += alpha;
    for (int t = 1; t <= n; ++t) {
      model.linear[model.variable_index(i, t)] -= alpha;
      for (int u = t + 1; u <= n; ++u)
        add_quadratic(model.variable_index(i, t), model.variable_index(i, u), 2.0 * alpha);
    }
  }

  // Column constraints: one vehicle per position.
  for (int t = 1; t <= n; ++t) {
    model.constant += alpha;
    for (int i = 1; i <= n; ++i) {
      model.linear[model.variable_index(i, t)] -= alpha;
      for (int u = i + 1; u <= n; ++u)
        add_quadratic(model.variable_index(i, t), model.variable_index(u, t), 2.0 * alpha);
    }
  }

  return model;
}

/// Direct evaluation: constant + sum(linear .* bits) + sum of quadratic
/// terms with both ends set. Throws DimensionError on length mismatch.
inline double evaluate(const QuboModel& model, const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != model.num_variables())
    throw DimensionError("bitstring has " + std::to_string(bits.size()) +
                         " bits, model expects " + std::to_string(model.num_variables()));
  double value = model.constant;
  for (int k = 0; k < model.num_variables(); ++k)
    if (bits[k]) value += model.linear[k];
  for (const auto& [key, coeff] : model.quadratic)
    if (bits[key.first] && bits[key.second]) value += coeff;
  return value;
}

/// Bits of a basis index, least-significant bit first: bits[k] is the
/// value of flat variable k.
inline std::vector<int> bits_from_index(std::uint64_t basis, int num_bits) {
  std::vector<int> bits(num_bits);
  for (int k = 0; k < num_bits; ++k) bits[k] = static_cast<int>((basis >> k) & 1u);
  return bits;
}

inline std::uint64_t index_from_bits(const std::vector<int>& bits) {
  std::uint64_t basis = 0;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) basis |= std::uint64_t{1} << k;
  return basis;
}

/// Interprets a bitstring as a sequence matrix. Feasible bitstrings (one 1
/// per row and per column) decode to a priced SequencePlan; otherwise the
/// result carries the count of violated one-hot constraints.
inline DecodeResult decode(const QuboModel& model, const std::vector<int>& bits) {
  if (static_cast<int>(bits.size()) != model.num_variables())
    throw DimensionError("bitstring has " + std::to_string(bits.size()) +
                         " bits, model expects " + std::to_string(model.num_variables()));
  const int n = model.n;
  DecodeResult result;
  std::vector<int> vehicle_at(static_cast<std::size_t>(n) + 1, 0);  // by position

  int violated = 0;
  for (int i = 1; i <= n; ++i) {
    int row_sum = 0;
    for (int t = 1; t <= n; ++t) row_sum += bits[model.variable_index(i, t)];
    if (row_sum != 1) ++violated;
  }
  for (int t = 1; t <= n; ++t) {
    int col_sum = 0;
    for (int i = 1; i <= n; ++i) {
      if (bits[model.variable_index(i, t)]) {
        ++col_sum;
        vehicle_at[t] = i;
      }
    }
    if (col_sum != 1) ++violated;
  }

  result.violated_constraints = violated;
  if (violated == 0) {
    std::vector<int> order(vehicle_at.begin() + 1, vehicle_at.end());
    result.plan = sequence_cost(model.instance, order);
  }
  return result;
}

/// Permutation -> bitstring with exactly one 1 per row and column. Throws
/// InvalidSequenceError if `order` is not a permutation of the ids.
inline std::vector<int> encode(const QuboModel& model, const std::vector<int>& order) {
  if (!detail::is_permutation_of_ids(order, model.n))
    throw InvalidSequenceError("order is not a permutation of vehicle ids 1.." +
                               std::to_string(model.n));
  std::vector<int> bits(model.num_variables(), 0);
  for (int t = 1; t <= model.n; ++t) bits[model.variable_index(order[t - 1], t)] = 1;
  return bits;
}

}  // namespace paintseq
