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

#include <functional>
#include <optional>

#include "risopt/rate.hpp"

namespace risopt {

/// Channel entries are divided by one RMS computed over G and H together.
struct StateNorm {
  double channel_rms = 1.0;

  static StateNorm from_channel(const ChannelPair& ch);
};

/// Row n holds Re(G)_n, Re(H)_n, Im(G)_n, Im(H)_n, theta_n / 360 deg and, when
/// `refined` is given, theta'_n / 360 deg. Flattened row-major.
Eigen::VectorXd build_state(const ChannelPair& ch, const PhaseConfig& phases,
                            const PhaseConfig* refined, const StateNorm& norm);

/// Elements of column `column` (0-based) occupy [column * side, (column + 1) * side).
inline int element_index(int column, int row, int side) { return column * side + row; }

struct GreedyOutcome {
  double reward = 0.0;
  // One entry per trial: the element tried and whether the advance was kept.
  std::vector<std::pair<int, bool>> trials;
};

/// Element-wise accept/revert search inside one column. Trial p (0-based)
/// advances element (p mod side) of the column by one level and keeps it when
/// the objective does not drop below the best value so far. `config` is
/// updated in place.
GreedyOutcome greedy_refine(PhaseConfig& config, int column, int side, double baseline_reward,
                            int iterations,
                            const std::function<double(const PhaseConfig&)>& objective);

struct StepResult {
  Eigen::VectorXd state;
  double reward = 0.0;
  bool done = false;
  // Reward the step would have earned without greedy refinement.
  double pre_refine_reward = 0.0;
  double rate_bps = 0.0;
  std::optional<GreedyOutcome> greedy;
};

/// RIS environment with accumulated column actions. Action 0 keeps the
/// configuration; action c in [1, side] advances every element of column c by
/// one level (cyclic). With refinement enabled the state carries a second
/// phase column and each step runs `greedy_refine` on the chosen column of the
/// working configuration.
class RisEnv {
 public:
  struct Options {
    int n_steps = 7;
    double omega = 2.0;
    bool with_refined = false;
    int greedy_iterations = 0;
    bool reward_in_bps = false;
  };

  RisEnv(const ChannelPair& ch, const SystemConfig& sys, Options opts);

  Eigen::VectorXd reset();
  StepResult step(int action);

  int action_count() const { return side_ + 1; }
  int state_size() const;
  int side() const { return side_; }
  int step_index() const { return t_; }

  /// Configuration produced by the actions alone.
  const PhaseConfig& phases() const { return phases_; }
  /// Configuration after refinement; equal to phases() when refinement is off.
  const PhaseConfig& refined() const { return working_; }

  /// Spectral efficiency (bit/s/Hz) of a configuration.
  double spectral_efficiency(const PhaseConfig& config) const;
  /// Reward scale applied to spectral efficiency (1 or the bandwidth).
  double reward_unit() const { return opts_.reward_in_bps ? sys_.bandwidth_hz : 1.0; }

  double best_rate_bps() const { return best_se_ * sys_.bandwidth_hz; }
  const PhaseConfig& best_phases() const { return best_; }
  std::uint64_t evaluations() const { return evaluations_; }

 private:
  double evaluate(const PhaseConfig& config);
  Eigen::VectorXd current_state() const;

  const ChannelPair& ch_;
  SystemConfig sys_;
  Options opts_;
  int side_;
  StateNorm norm_;
  PhaseConfig phases_;
  PhaseConfig working_;
  int t_ = 0;
  Eigen::VectorXd channel_block_;
  double best_se_ = -1.0;
  PhaseConfig best_;
  std::uint64_t evaluations_ = 0;
};

}  // namespace risopt
