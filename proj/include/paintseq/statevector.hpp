#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "paintseq/errors.hpp"

namespace paintseq {

/// Default memory guard: 2^26 amplitudes = 1 GiB of complex doubles.
inline constexpr int kDefaultMaxQubits = 26;

/// Exact amplitude vector over 2^m basis states. Basis index b encodes a
/// bitstring least-significant-bit first: bit k of b is the value of flat
/// QUBO variable k (the qubo module's layout).
struct Statevector {
  int num_qubits = 0;
  std::vector<std::complex<double>> amplitudes;

  std::uint64_t dimension() const { return std::uint64_t{1} << num_qubits; }
};

/// Diagonal of the cost operator: values[b] is the objective value of the
/// bitstring encoded by basis index b.
struct DiagonalCost {
  std::vector<double> values;
};

inline double norm(const Statevector& state) {
  double sum = 0.0;
  for (const auto& a : state.amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

/// Equal-amplitude superposition of all basis states, phase 0. Throws
/// CapacityError when m is outside [1, max_qubits].
inline Statevector uniform_superposition(int m, int max_qubits = kDefaultMaxQubits) {
  if (m < 1) throw CapacityError("qubit count must be >= 1");
  if (m > max_qubits)
    throw CapacityError("statevector over " + std::to_string(m) +
                        " qubits exceeds the configured limit of " +
                        std::to_string(max_qubits));
  Statevector state;
  state.num_qubits = m;
  const double amplitude = std::pow(2.0, -0.5 * m);
  state.amplitudes.assign(state.dimension(), std::complex<double>(amplitude, 0.0));
  return state;
}

/// Cost-phase operator: multiplies amplitude b by exp(-i * gamma *
/// values[b]). Diagonal, so norm is untouched.
inline void apply_cost_phase(Statevector& state, const DiagonalCost& costs, double gamma) {
  if (costs.values.size() != state.amplitudes.size())
    throw DimensionError("diagonal cost has " + std::to_string(costs.values.size()) +
                         " entries, state has " + std::to_string(state.amplitudes.size()));
  for (std::uint64_t b = 0; b < state.dimension(); ++b)
    state.amplitudes[b] *= std::polar(1.0, -gamma * costs.values[b]);
}

/// Transverse mixer: the one-qubit rotation
///   [[cos b, -i sin b], [-i sin b, cos b]]
/// applied to every qubit in turn (the X terms commute, so the exponential
/// of their sum factors into identical single-qubit rotations). Amplitudes
/// are paired at stride 2^k for qubit k.
inline void apply_mixer(Statevector& state, double beta) {
  const double c = std::cos(beta);
  const std::complex<double> ms(0.0, -std::sin(beta));
  const std::uint64_t dim = state.dimension();
  for (int k = 0; k < state.num_qubits; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    for (std::uint64_t b = 0; b < dim; ++b) {
      if (b & bit) continue;
      const std::complex<double> a0 = state.amplitudes[b];
      const std::complex<double> a1 = state.amplitudes[b | bit];
      state.amplitudes[b] = c * a0 + ms * a1;
      state.amplitudes[b | bit] = ms * a0 + c * a1;
    }
  }
}

/// <state| diag(values) |state> — real by construction.
inline double expectation(const Statevector& state, const DiagonalCost& costs) {
  if (costs.values.size() != state.amplitudes.size())
    throw DimensionError("diagonal cost has " + std::to_string(costs.values.size()) +
                         " entries, state has " + std::to_string(state.amplitudes.size()));
  double sum = 0.0;
  for (std::uint64_t b = 0; b < state.dimension(); ++b)
    sum += std::norm(state.amplitudes[b]) * costs.values[b];
  return sum;
}

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits of the generator output,
/// so draws are identical across platforms for a fixed seed.
inline double next_unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Draws `shots` basis indices i.i.d. from the measurement distribution
/// |amplitude|^2 by inverse-CDF lookup. Deterministic for a fixed seed.
inline std::vector<std::uint64_t> sample(const Statevector& state, int shots,
                                         std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  std::vector<double> cumulative(state.amplitudes.size());
  double running = 0.0;
  for (std::uint64_t b = 0; b < state.dimension(); ++b) {
    running += std::norm(state.amplitudes[b]);
    cumulative[b] = running;
  }
  const double total = cumulative.back();

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> draws;
  draws.reserve(shots);
  for (int s = 0; s < shots; ++s) {
    const double u = detail::next_unit_double(rng) * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    draws.push_back(static_cast<std::uint64_t>(it - cumulative.begin()));
  }
  return draws;
}

}  // namespace paintseq
