#include <catch2/catch_amalgamated.hpp>

#include "paintseq/exact.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace paintseq;

TEST_CASE("enumeration finds the cheapest order, lexicographic on ties", "[exact]") {
  auto instance = fixtures::case_study();
  instance.rates.repair = 0.0;
  const auto plan = solve_exact(instance);
  // Four orders reach the single-changeover minimum of 20; the smallest
  // lexicographically is 1-3-2.
  CHECK(plan.total_cost == Catch::Approx(20.0));
  CHECK(plan.order == std::vector<int>{1, 3, 2});
  CHECK(count_changeovers(instance, plan.order) == 1);
}

TEST_CASE("case study optimum is unique at the bundled rates", "[exact]") {
  const auto instance = fixtures::case_study();
  const auto plan = solve_exact(instance);
  CHECK(plan.order == std::vector<int>{2, 1, 3});
  CHECK(plan.total_cost == Catch::Approx(28.0));
  CHECK(plan.changeover_cost == Catch::Approx(20.0));
  CHECK(plan.repair_cost == Catch::Approx(8.0));
}

TEST_CASE("single-vehicle instances are trivial", "[exact]") {
  std::vector<Vehicle> one = {{1, "red", "A", {}}};
  const auto instance =
      make_instance(std::move(one), CostRates{20.0, 100.0}, RepairModel(1));
  const auto plan = solve_exact(instance);
  CHECK(plan.order == std::vector<int>{1});
  CHECK(plan.total_cost == 0.0);
}

TEST_CASE("uniform landscapes return the identity order", "[exact]") {
  const auto plan = solve_exact(fixtures::flat_landscape(4, 0.3));
  CHECK(plan.order == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("enumeration cap triggers before any work", "[exact]") {
  std::vector<Vehicle> many;
  for (int id = 1; id <= 11; ++id) many.push_back({id, "red", "A", {}});
  RepairModel repair(11);
  for (int i = 1; i <= 11; ++i)
    for (int j = 1; j <= 11; ++j)
      if (i != j) repair.set(i, j, 0.1);
  const auto instance =
      make_instance(std::move(many), CostRates{20.0, 100.0}, std::move(repair));
  CHECK_THROWS_AS(solve_exact(instance), CapacityError);
  CHECK_NOTHROW(solve_exact(instance, 11));
}

TEST_CASE("exhaustive scan agrees with enumeration through the encoding", "[exact]") {
  const auto instance = fixtures::case_study();
  const auto model = build_qubo(instance);
  const auto [bits, value] = solve_qubo_exhaustive(model);
  const auto decoded = decode(model, bits);
  REQUIRE(decoded.feasible());
  const auto plan = solve_exact(instance);
  CHECK(value == Catch::Approx(plan.total_cost).margin(1e-9));
  CHECK(decoded.plan->order == plan.order);
}

TEST_CASE("two-vehicle exhaustive scan, all sixteen bitstrings", "[exact]") {
  const auto instance = fixtures::two_vehicle_toy();
  const auto model = build_qubo(instance);

  // Independent scan via the unexpanded objective.
  double best_value = std::numeric_limits<double>::infinity();
  std::uint64_t best_basis = 0;
  for (std::uint64_t b = 0; b < 16; ++b) {
    const double value =
        oracles::penalized_objective(instance, model.penalty, oracles::bits_of(b, 4));
    if (value < best_value) {
      best_value = value;
      best_basis = b;
    }
  }

  const auto [bits, value] = solve_qubo_exhaustive(model);
  CHECK(value == Catch::Approx(best_value).margin(1e-9));
  CHECK(index_from_bits(bits) == best_basis);
  // Painting vehicle 1 first costs 20 + 0.05 * 100; its matrix sets bits 0
  // and 3 of the flat layout.
  CHECK(value == Catch::Approx(25.0));
  CHECK(best_basis == 9);
}

TEST_CASE("a penalty-free model keeps the empty bitstring optimal", "[exact]") {
  const auto instance = fixtures::case_study();
  QuboModel degenerate;
  degenerate.n = 3;
  degenerate.penalty = 0.0;
  degenerate.linear.assign(9, 0.0);
  degenerate.instance = instance;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      const double pair_cost =
          instance.changeover_between(i, j) * instance.rates.changeover +
          instance.repair_probability(i, j) * instance.rates.repair;
      for (int t = 2; t <= 3; ++t) {
        int u = degenerate.variable_index(j, t - 1);
        int v = degenerate.variable_index(i, t);
        if (u > v) std::swap(u, v);
        degenerate.quadratic[{u, v}] += pair_cost;
      }
    }

  const auto [bits, value] = solve_qubo_exhaustive(degenerate);
  CHECK(value == 0.0);
  CHECK(index_from_bits(bits) == 0);
}

TEST_CASE("scan cap protects against oversized models", "[exact]") {
  const auto model = build_qubo(oracles::random_instance(3, 5));
  CHECK_THROWS_AS(solve_qubo_exhaustive(model), CapacityError);
}

TEST_CASE("both oracles agree on random instances", "[exact]") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto instance = oracles::random_instance(seed, 3);
    const auto model = build_qubo(instance);
    const auto plan = solve_exact(instance);
    const auto [bits, value] = solve_qubo_exhaustive(model);
    const auto decoded = decode(model, bits);
    REQUIRE(decoded.feasible());
    CHECK(value == Catch::Approx(plan.total_cost).margin(1e-9));
  }
}

TEST_CASE("zero repair rate minimizes changeovers alone", "[exact]") {
  const auto records = sweep_repair_rate(fixtures::tipping_point(), {0.0});
  REQUIRE(records.size() == 1);
  CHECK(records.front().changeover_count == 1);
  CHECK(records.front().total_cost == Catch::Approx(20.0));
  CHECK(records.front().repair_cost == Catch::Approx(0.0));
}

TEST_CASE("the engineered fixture tips from one change to two at 80", "[exact]") {
  const auto records = sweep_repair_rate(fixtures::tipping_point(), {70.0, 80.0, 90.0});
  REQUIRE(records.size() == 3);
  CHECK(records[0].changeover_count == 1);
  CHECK(records[0].optimal_order == std::vector<int>{2, 3, 1});
  CHECK(records[0].total_cost == Catch::Approx(20.0 + 0.30 * 70.0));
  CHECK(records[1].changeover_count == 2);
  CHECK(records[1].optimal_order == std::vector<int>{1, 2, 3});
  CHECK(records[1].total_cost == Catch::Approx(44.0));  // tie point: both lines meet
  CHECK(records[2].changeover_count == 2);
  CHECK(records[2].total_cost == Catch::Approx(40.0 + 0.05 * 90.0));

  const auto tipping = detect_tipping_points(records);
  REQUIRE(tipping.size() == 1);
  CHECK(tipping.front() == Catch::Approx(80.0));
}

TEST_CASE("sweep cost curve is concave, piecewise linear, non-decreasing", "[exact]") {
  std::vector<double> rates;
  for (double rate = 0.0; rate <= 160.0; rate += 5.0) rates.push_back(rate);
  const auto records = sweep_repair_rate(fixtures::tipping_point(), rates);

  for (std::size_t k = 1; k < records.size(); ++k)
    CHECK(records[k].total_cost - records[k - 1].total_cost >= -1e-9);
  for (std::size_t k = 2; k < records.size(); ++k) {
    const double second_difference = records[k].total_cost -
                                     2.0 * records[k - 1].total_cost +
                                     records[k - 2].total_cost;
    CHECK(second_difference <= 1e-9);
  }
  for (const auto& record : records) {
    CHECK(record.changeover_cost == Catch::Approx(20.0 * record.changeover_count));
    CHECK(record.total_cost ==
          Catch::Approx(record.changeover_cost + record.repair_cost).margin(1e-9));
  }
}

TEST_CASE("constant repair probabilities never tip", "[exact]") {
  std::vector<double> rates = {0.0, 40.0, 80.0, 120.0, 160.0};
  const auto records = sweep_repair_rate(fixtures::flat_landscape(3, 0.2), rates);
  for (const auto& record : records) CHECK(record.changeover_count == 0);
  CHECK(detect_tipping_points(records).empty());
}

TEST_CASE("sweep rejects empty or negative rate lists", "[exact]") {
  CHECK_THROWS_AS(sweep_repair_rate(fixtures::tipping_point(), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep_repair_rate(fixtures::tipping_point(), {10.0, -1.0}),
                  std::invalid_argument);
}
