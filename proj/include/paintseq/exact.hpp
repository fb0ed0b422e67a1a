#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "paintseq/errors.hpp"
#include "paintseq/problem.hpp"
#include "paintseq/qubo.hpp"

namespace paintseq {

/// solve_exact enumerates n! permutations; 10! is ~3.6M, still fast.
inline constexpr int kDefaultEnumerationCap = 10;

/// One point of a repair-rate sweep.
struct SweepRecord {
  double repair_rate = 0.0;
  std::vector<int> optimal_order;
  double total_cost = 0.0;
  double changeover_cost = 0.0;
  double repair_cost = 0.0;
  int changeover_count = 0;
};

/// Global minimum over all n! orders by lexicographic enumeration with a
/// streaming running best, so equal-cost optima resolve to the
/// lexicographically smallest order. Throws CapacityError above the cap.
inline SequencePlan solve_exact(const ProblemInstance& instance,
                                int enumeration_cap = kDefaultEnumerationCap) {
  const int n = instance.size();
  if (n == 0) throw InvalidInstanceError("instance has no vehicles");
  if (n > enumeration_cap)
    throw CapacityError("exact enumeration capped at " + std::to_string(enumeration_cap) +
                        " vehicles (" + std::to_string(n) +
                        " requested); use the QAOA path for larger instances");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  SequencePlan best = sequence_cost(instance, order);
  while (std::next_permutation(order.begin(), order.end())) {
    SequencePlan candidate = sequence_cost(instance, order);
    if (candidate.total_cost < best.total_cost) best = std::move(candidate);
  }
  return best;
}

/// Argmin of the penalized objective over all 2^(n^2) bitstrings, ties
/// resolved to the lowest basis index. Validation oracle for the penalty
/// construction; capped at 16 variables.
inline std::pair<std::vector<int>, double> solve_qubo_exhaustive(const QuboModel& model) {
  const int m = model.num_variables();
  if (m > 16)
    throw CapacityError("exhaustive bitstring scan capped at 16 variables (" +
                        std::to_string(m) + " requested)");
  std::uint64_t best_basis = 0;
  double best_value = evaluate(model, bits_from_index(0, m));
  for (std::uint64_t b = 1; b < (std::uint64_t{1} << m); ++b) {
    const double value = evaluate(model, bits_from_index(b, m));
    if (value < best_value) {
      best_value = value;
      best_basis = b;
    }
  }
  return {bits_from_index(best_basis, m), best_value};
}

/// Re-solves the instance exactly at each repair rate. Records come back
/// in the order the rates were given.
inline std::vector<SweepRecord> sweep_repair_rate(const ProblemInstance& instance,
                                                  const std::vector<double>& rates,
                                                  int enumeration_cap = kDefaultEnumerationCap) {
  if (rates.empty()) throw std::invalid_argument("rate list must not be empty");
  for (const double rate : rates)
    if (!(rate >= 0.0)) throw std::invalid_argument("repair rates must be >= 0");

  std::vector<SweepRecord> records;
  records.reserve(rates.size());
  for (const double rate : rates) {
    ProblemInstance scaled = instance;
    scaled.rates.repair = rate;
    const SequencePlan plan = solve_exact(scaled, enumeration_cap);
    SweepRecord record;
    record.repair_rate = rate;
    record.optimal_order = plan.order;
    record.total_cost = plan.total_cost;
    record.changeover_cost = plan.changeover_cost;
    record.repair_cost = plan.repair_cost;
    record.changeover_count = count_changeovers(scaled, plan.order);
    records.push_back(std::move(record));
  }
  return records;
}

/// Rates at which the optimal changeover count differs from the previous
/// record's: the sweep's tipping points.
inline std::vector<double> detect_tipping_points(const std::vector<SweepRecord>& records) {
  std::vector<double> points;
  for (std::size_t k = 1; k < records.size(); ++k)
    if (records[k].changeover_count != records[k - 1].changeover_count)
      points.push_back(records[k].repair_rate);
  return points;
}

}  // namespace paintseq
