#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "paintseq/errors.hpp"
#include "paintseq/qubo.hpp"
#include "paintseq/statevector.hpp"

namespace paintseq {

/// Variational angles for a p-level ansatz. Angles are stored unreduced;
/// any periodicity is the optimizer's concern.
struct QaoaParams {
  int levels = 1;
  std::vector<double> gammas;
  std::vector<double> betas;
};

struct OptimizerConfig {
  int grid_resolution = 32;   // seeding grid is grid_resolution^2 points
  int max_iterations = 200;   // Nelder-Mead budget per refinement
  int restarts = 4;           // refinements seeded from the grid; 0 = grid only
  double convergence_tolerance = 1e-8;
};

struct QaoaConfig {
  int levels = 3;
  OptimizerConfig optimizer;
  int shots = 4096;
  std::uint64_t seed = 1;
};

struct TracePoint {
  int iteration = 0;  // objective-evaluation count when the best improved
  double expectation = 0.0;
};

struct QaoaResult {
  QaoaParams best_params;
  double best_expectation = 0.0;
  std::vector<std::uint64_t> samples;
  std::optional<SequencePlan> best_feasible;
  std::vector<TracePoint> optimizer_trace;
};

/// Tabulates the model objective over every basis state. values[b] equals
/// evaluate(model, bits_from_index(b)) exactly; the loop below just avoids
/// re-walking the sparse terms through the map per basis state.
inline DiagonalCost diagonal_cost(const QuboModel& model,
                                  int max_qubits = kDefaultMaxQubits) {
  const int m = model.num_variables();
  if (m > max_qubits)
    throw CapacityError("diagonal over " + std::to_string(m) +
                        " qubits exceeds the configured limit of " +
                        std::to_string(max_qubits));
  struct QuadTerm {
    std::uint64_t mask;
    double coeff;
  };
  std::vector<QuadTerm> quads;
  quads.reserve(model.quadratic.size());
  for (const auto& [key, coeff] : model.quadratic)
    quads.push_back({(std::uint64_t{1} << key.first) | (std::uint64_t{1} << key.second),
                     coeff});

  DiagonalCost costs;
  costs.values.resize(std::uint64_t{1} << m);
  for (std::uint64_t b = 0; b < costs.values.size(); ++b) {
    double value = model.constant;
    for (int k = 0; k < m; ++k)
      if ((b >> k) & 1u) value += model.linear[k];
    for (const QuadTerm& term : quads)
      if ((b & term.mask) == term.mask) value += term.coeff;
    costs.values[b] = value;
  }
  return costs;
}

namespace detail {

inline void check_params(const QaoaParams& params) {
  if (params.levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (static_cast<int>(params.gammas.size()) != params.levels ||
      static_cast<int>(params.betas.size()) != params.levels)
    throw std::invalid_argument("angle arrays must match the level count");
}

/// One ansatz preparation against a precomputed diagonal.
inline Statevector run_ansatz(const DiagonalCost& costs, int num_qubits,
                              const QaoaParams& params) {
  check_params(params);
  Statevector state = uniform_superposition(num_qubits);
  for (int l = 0; l < params.levels; ++l) {
    apply_cost_phase(state, costs, params.gammas[l]);
    apply_mixer(state, params.betas[l]);
  }
  return state;
}

}  // namespace detail

/// Prepares |s> and applies the cost and mixer operators alternately for
/// each level. Propagates CapacityError when the model needs more qubits
/// than the simulator allows.
inline Statevector ansatz_state(const QuboModel& model, const QaoaParams& params) {
  return detail::run_ansatz(diagonal_cost(model), model.num_variables(), params);
}

/// Decodes every sampled bitstring and returns the cheapest feasible plan,
/// ties broken by lexicographically smallest order; nullopt when no sample
/// is feasible.
inline std::optional<SequencePlan> extract_best_feasible(
    const QuboModel& model, const std::vector<std::uint64_t>& samples) {
  std::optional<SequencePlan> best;
  const std::set<std::uint64_t> unique(samples.begin(), samples.end());
  for (const std::uint64_t basis : unique) {
    const DecodeResult decoded = decode(model, bits_from_index(basis, model.num_variables()));
    if (!decoded.feasible()) continue;
    const SequencePlan& plan = *decoded.plan;
    if (!best || plan.total_cost < best->total_cost ||
        (plan.total_cost == best->total_cost && plan.order < best->order))
      best = plan;
  }
  return best;
}

namespace detail {

/// Deterministic Nelder-Mead over an n-dimensional objective. Returns the
/// best vertex found within the iteration budget.
template <typename Objective>
std::pair<std::vector<double>, double> nelder_mead(Objective&& objective,
                                                   std::vector<double> start,
                                                   int max_iterations,
                                                   double tolerance,
                                                   double initial_step = 0.25) {
  const std::size_t dim = start.size();
  std::vector<std::vector<double>> simplex;
  simplex.push_back(start);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<double> vertex = start;
    vertex[k] += initial_step;
    simplex.push_back(std::move(vertex));
  }
  std::vector<double> values(simplex.size());
  for (std::size_t v = 0; v < simplex.size(); ++v) values[v] = objective(simplex[v]);

  auto order_vertices = [&] {
    std::vector<std::size_t> idx(simplex.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> new_simplex;
    std::vector<double> new_values;
    for (std::size_t i : idx) {
      new_simplex.push_back(simplex[i]);
      new_values.push_back(values[i]);
    }
    simplex = std::move(new_simplex);
    values = std::move(new_values);
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    order_vertices();
    if (values.back() - values.front() <
        tolerance * (1.0 + std::abs(values.front())))
      break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[v][k];
    for (double& c : centroid) c /= static_cast<double>(dim);

    auto blend = [&](double factor) {
      std::vector<double> point(dim);
      for (std::size_t k = 0; k < dim; ++k)
        point[k] = centroid[k] + factor * (centroid[k] - simplex.back()[k]);
      return point;
    };

    const std::vector<double> reflected = blend(1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected < values.front()) {
      const std::vector<double> expanded = blend(2.0);
      const double f_expanded = objective(expanded);
      if (f_expanded < f_reflected) {
        simplex.back() = expanded;
        values.back() = f_expanded;
      } else {
        simplex.back() = reflected;
        values.back() = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[values.size() - 2]) {
      simplex.back() = reflected;
      values.back() = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values.back();
    const std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
    const double f_contracted = objective(contracted);
    if (f_contracted < (outside ? f_reflected : values.back())) {
      simplex.back() = contracted;
      values.back() = f_contracted;
      continue;
    }
    for (std::size_t v = 1; v < simplex.size(); ++v) {  // shrink toward best
      for (std::size_t k = 0; k < dim; ++k)
        simplex[v][k] = simplex[0][k] + 0.5 * (simplex[v][k] - simplex[0][k]);
      values[v] = objective(simplex[v]);
    }
  }
  order_vertices();
  return {simplex.front(), values.front()};
}

}  // namespace detail

/// Outer classical loop: a coarse (gamma, beta) grid over [0, 2pi) x
/// [0, pi) seeds `restarts` Nelder-Mead refinements for level 1; deeper
/// levels are warm-started layer by layer (earlier angles frozen for the
/// new layer's grid scan, then the full vector is refined). Expectations
/// are computed exactly from the statevector; sampling happens once, on
/// the final optimized state. The grid always contains the all-zero
/// point, so the result can never fall behind the uniform baseline.
inline QaoaResult optimize(const QuboModel& model, const QaoaConfig& config) {
  if (config.levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (config.shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (config.optimizer.grid_resolution < 1)
    throw std::invalid_argument("grid resolution must be >= 1");
  if (config.optimizer.max_iterations < 1)
    throw std::invalid_argument("max iterations must be >= 1");
  if (config.optimizer.restarts < 0)
    throw std::invalid_argument("restarts must be >= 0");
  if (!(config.optimizer.convergence_tolerance > 0.0))
    throw std::invalid_argument("convergence tolerance must be > 0");

  const int m = model.num_variables();
  const DiagonalCost costs = diagonal_cost(model);

  QaoaResult result;
  int evaluations = 0;
  double best_value = std::numeric_limits<double>::infinity();

  auto make_params = [](const std::vector<double>& packed) {
    QaoaParams params;
    params.levels = static_cast<int>(packed.size() / 2);
    params.gammas.assign(packed.begin(), packed.begin() + params.levels);
    params.betas.assign(packed.begin() + params.levels, packed.end());
    return params;
  };

  // Packed layout: [gamma_1..gamma_L, beta_1..beta_L].
  auto objective = [&](const std::vector<double>& packed) {
    const double value =
        expectation(detail::run_ansatz(costs, m, make_params(packed)), costs);
    ++evaluations;
    if (value < best_value) {
      best_value = value;
      result.optimizer_trace.push_back({evaluations, value});
    }
    return value;
  };

  const int resolution = config.optimizer.grid_resolution;
  const double gamma_step = 2.0 * std::numbers::pi / resolution;
  const double beta_step = std::numbers::pi / resolution;

  std::vector<double> current;  // packed best params over the levels built so far
  for (int level = 1; level <= config.levels; ++level) {
    // Extends the packed vector of the previous levels with one grid pair.
    auto packed_for = [&](int a, int b) {
      std::vector<double> packed(2 * level);
      for (int l = 0; l < level - 1; ++l) {
        packed[l] = current[l];
        packed[level + l] = current[level - 1 + l];
      }
      packed[level - 1] = a * gamma_step;
      packed[2 * level - 1] = b * beta_step;
      return packed;
    };

    // Grid scan of the new layer's pair, earlier layers frozen.
    std::vector<std::pair<double, std::pair<int, int>>> scored;
    scored.reserve(static_cast<std::size_t>(resolution) * resolution);
    for (int a = 0; a < resolution; ++a)
      for (int b = 0; b < resolution; ++b)
        scored.push_back({objective(packed_for(a, b)), {a, b}});
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });

    std::vector<double> level_best = packed_for(scored.front().second.first,
                                                scored.front().second.second);
    double level_best_value = scored.front().first;

    // Level 1 refines from the top `restarts` grid seeds; extension levels
    // refine once from the grid winner. restarts == 0 keeps the grid point.
    const int starts = level == 1 ? std::min(config.optimizer.restarts,
                                             static_cast<int>(scored.size()))
                                  : (config.optimizer.restarts > 0 ? 1 : 0);
    for (int s = 0; s < starts; ++s) {
      auto [point, value] = detail::nelder_mead(
          objective, packed_for(scored[s].second.first, scored[s].second.second),
          config.optimizer.max_iterations, config.optimizer.convergence_tolerance);
      if (value < level_best_value) {
        level_best_value = value;
        level_best = std::move(point);
      }
    }
    current = std::move(level_best);
  }

  result.best_params = make_params(current);
  Statevector state = detail::run_ansatz(costs, m, result.best_params);
  result.best_expectation = expectation(state, costs);
  result.samples = sample(state, config.shots, config.seed);
  result.best_feasible = extract_best_feasible(model, result.samples);
  return result;
}

}  // namespace paintseq
