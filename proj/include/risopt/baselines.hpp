// Copyright 2026 The risopt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "risopt/agents.hpp"

namespace risopt {

enum class StaticKind { kFlat, kRandom };

/// Flat: all zeros. Random: i.i.d. uniform level per element.
PhaseConfig baseline_static(StaticKind kind, const SystemConfig& cfg, Rng& rng);

struct RandomSearchResult {
  PhaseConfig best;
  double best_rate_bps = 0.0;
  double mean_rate_bps = 0.0;
};

/// Best (and mean) of `draws` independent random configurations.
RandomSearchResult random_search(const ChannelPair& ch, const SystemConfig& cfg, int draws, Rng& rng);

inline constexpr int kMaxExhaustiveBits = 20;

struct OracleResult {
  PhaseConfig best;
  double best_rate_bps = 0.0;
  std::uint64_t evaluations = 0;
};

/// Global optimum by enumeration of all 2^(N bits) configurations, ties to the
/// lexicographically lowest index vector. Rejects N * bits > 20.
OracleResult exhaustive_oracle(const ChannelPair& ch, const SystemConfig& cfg);

struct PsoParams {
  int swarm_size = 40;
  int iterations = 200;
  double inertia = 0.729;
  double cognitive = 1.494;
  double social = 1.494;

  void validate() const;
};

struct PsoResult {
  std::vector<double> continuous;
  PhaseConfig quantized;
  double continuous_rate_bps = 0.0;
  double quantized_rate_bps = 0.0;
  std::vector<double> best_trace_bps;  // global best after each iteration
};

/// Nearest level of the discrete set on the circle; exact midpoints go to the
/// lower phase.
PhaseConfig quantize_phases(std::span<const double> theta, int resolution_bits);

/// Global-best particle swarm over [0, 2 pi)^N with wrapped positions, then
/// per-element quantization.
PsoResult pso_optimize(const ChannelPair& ch, const SystemConfig& cfg, const PsoParams& pso, Rng& rng);

enum class EnumVariant { kDqn, kDdqn };

/// Column levels for an enumerated action: little-endian base-2^bits digits,
/// column 1 the least significant. Returns one level per column.
std::vector<int> decode_column_action(std::uint64_t action, int side, int resolution_bits);
std::uint64_t encode_column_action(std::span<const int> levels, int resolution_bits);
/// Expands column levels to a full configuration.
PhaseConfig column_levels_to_phases(std::span<const int> levels, int side, int resolution_bits);

inline constexpr int kMaxEnumeratedActionBits = 14;

/// Column-wise DQN/DDQN whose action set is every complete column
/// configuration. Episodes are a single step; `episodes` of them are run.
TrainReport columnwise_enum_train(EnumVariant variant, const AgentConfig& cfg,
                                  const SystemConfig& sys, const ChannelPair& ch, int episodes,
                                  Rng& rng);

}  // namespace risopt
