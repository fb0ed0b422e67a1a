#pragma once

// In-code copies of the bundled instances (data/*.json). test_io checks
// that the JSON files decode to exactly these values.

#include <vector>

#include "paintseq/problem.hpp"

namespace fixtures {

/// Two reds around one white; unique optimum 2-1-3 (one color change,
/// adjacent repair sum 0.08, total 28 at the bundled rates).
inline paintseq::ProblemInstance case_study() {
  std::vector<paintseq::Vehicle> vehicles = {
      {1, "red", "A", {}}, {2, "white", "B", {}}, {3, "red", "B", {}}};
  paintseq::CostRates rates{20.0, 100.0};
  paintseq::RepairModel repair(3);
  repair.set(1, 2, 0.02);
  repair.set(1, 3, 0.10);
  repair.set(2, 1, 0.15);
  repair.set(2, 3, 0.12);
  repair.set(3, 1, 0.06);
  repair.set(3, 2, 0.09);
  return paintseq::make_instance(std::move(vehicles), rates, std::move(repair));
}

/// Engineered so the optimal changeover count flips from 1 to 2 at a
/// repair rate of exactly 80 (20 + 0.30r vs 40 + 0.05r).
inline paintseq::ProblemInstance tipping_point() {
  std::vector<paintseq::Vehicle> vehicles = {
      {1, "red", "A", {}}, {2, "white", "B", {}}, {3, "red", "A", {}}};
  paintseq::CostRates rates{20.0, 100.0};
  paintseq::RepairModel repair(3);
  repair.set(1, 2, 0.35);
  repair.set(1, 3, 0.28);
  repair.set(2, 1, 0.03);
  repair.set(2, 3, 0.40);
  repair.set(3, 1, 0.20);
  repair.set(3, 2, 0.02);
  return paintseq::make_instance(std::move(vehicles), rates, std::move(repair));
}

/// Same colors and an equal repair probability everywhere: every order
/// costs the same.
inline paintseq::ProblemInstance flat_landscape(int n, double p = 0.25) {
  std::vector<paintseq::Vehicle> vehicles;
  for (int id = 1; id <= n; ++id) vehicles.push_back({id, "red", "A", {}});
  paintseq::CostRates rates{20.0, 100.0};
  paintseq::RepairModel repair(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) repair.set(i, j, p);
  return paintseq::make_instance(std::move(vehicles), rates, std::move(repair));
}

/// Two vehicles of different colors with asymmetric repair probabilities.
inline paintseq::ProblemInstance two_vehicle_toy() {
  std::vector<paintseq::Vehicle> vehicles = {{1, "red", "A", {}}, {2, "white", "B", {}}};
  paintseq::CostRates rates{20.0, 100.0};
  paintseq::RepairModel repair(2);
  repair.set(1, 2, 0.30);
  repair.set(2, 1, 0.05);
  return paintseq::make_instance(std::move(vehicles), rates, std::move(repair));
}

}  // namespace fixtures
