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

#include <limits>
#include <vector>

#include "risopt/env.hpp"
#include "risopt/qlearner.hpp"

namespace risopt {

struct StepRecord {
  int episode = 0;  // 1-based
  int step = 0;     // 1-based
  double epsilon = 0.0;
  int action = 0;
  double reward = 0.0;
  double sum_rate_bps = 0.0;
  double loss = std::numeric_limits<double>::quiet_NaN();  // NaN before learning starts
  double pre_refine_reward = 0.0;
};

struct EpisodeRecord {
  double final_reward = 0.0;
  double final_rate_bps = 0.0;
};

struct TrainReport {
  std::vector<StepRecord> steps;
  std::vector<EpisodeRecord> episodes;
  PhaseConfig best_phases;
  double best_rate_bps = 0.0;
  int action_count = 0;
  std::uint64_t evaluations = 0;

  /// Mean final-episode rate over the last `window` episodes (all if fewer).
  double final_rate_mean(int window = 100) const;
};

TrainReport ddqn_train(const AgentConfig& cfg, const SystemConfig& sys, const ChannelPair& ch,
                       Rng& rng);

/// DDQN with greedy refinement after every non-zero action; the state also
/// carries the refined configuration.
TrainReport ddqn_ga_train(const AgentConfig& cfg, const SystemConfig& sys, const ChannelPair& ch,
                          Rng& rng);

}  // namespace risopt
