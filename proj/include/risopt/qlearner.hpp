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

#include <optional>

#include "risopt/config.hpp"
#include "risopt/mlp.hpp"
#include "risopt/replay.hpp"

namespace risopt {

/// Deep copy of the online parameters.
inline Mlp sync_target(const Mlp& online) { return online; }

enum class TargetRule {
  kDouble,  // a_max from the online net, value from the target net
  kMax,     // max over the target net alone
};

/// Online/target network pair with replay and an optimizer; the learning half
/// of the training loop, independent of the environment.
class QLearner {
 public:
  QLearner(int state_size, int action_count, const AgentConfig& cfg, TargetRule rule, Rng& rng);

  /// Epsilon-greedy choice. Always consumes one uniform draw, plus one more when
  /// exploring.
  int select_action(const Eigen::VectorXd& state, double epsilon, Rng& rng) const;
  int greedy_action(const Eigen::VectorXd& state) const;

  void remember(Transition t) { buffer_.push(std::move(t)); }

  /// One minibatch update once the buffer holds a full batch; returns the loss
  /// or nothing when the buffer is still too small. Target sync counts these
  /// gradient updates.
  std::optional<double> learn(Rng& rng);

  const Mlp& online() const { return online_; }
  const Mlp& target() const { return target_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  std::uint64_t updates() const { return updates_; }
  int action_count() const { return online_.output_size(); }

 private:
  AgentConfig cfg_;
  TargetRule rule_;
  Mlp online_;
  Mlp target_;
  AdamOptimizer opt_;
  ReplayBuffer buffer_;
  std::uint64_t updates_ = 0;
};

/// Index of the largest entry, lowest index on ties.
int argmax(const Eigen::VectorXd& values);

}  // namespace risopt
