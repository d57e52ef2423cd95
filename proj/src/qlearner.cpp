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

#include "risopt/qlearner.hpp"

namespace risopt {

int argmax(const Eigen::VectorXd& values) {
  int best = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = static_cast<int>(i);
  return best;
}

namespace {

std::vector<int> layer_sizes(int state_size, int action_count, const std::vector<int>& hidden) {
  std::vector<int> sizes{state_size};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(action_count);
  return sizes;
}

}  // namespace

QLearner::QLearner(int state_size, int action_count, const AgentConfig& cfg, TargetRule rule,
                   Rng& rng)
    : cfg_(cfg),
      rule_(rule),
      online_(layer_sizes(state_size, action_count, cfg.hidden), rng),
      target_(sync_target(online_)),
      opt_(online_, cfg.alpha),
      buffer_(static_cast<std::size_t>(cfg.n_replay)) {
  cfg_.validate();
}

int QLearner::greedy_action(const Eigen::VectorXd& state) const {
  return argmax(online_.forward(state));
}

int QLearner::select_action(const Eigen::VectorXd& state, double epsilon, Rng& rng) const {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon) {
    std::uniform_int_distribution<int> any(0, action_count() - 1);
    return any(rng);
  }
  return greedy_action(state);
}

std::optional<double> QLearner::learn(Rng& rng) {
  const auto batch_size = static_cast<std::size_t>(cfg_.n_batch);
  if (buffer_.size() < batch_size) return std::nullopt;

  const auto batch = buffer_.sample(batch_size, rng);
  const auto cols = static_cast<Eigen::Index>(batch_size);
  Eigen::MatrixXd states(online_.input_size(), cols);
  Eigen::MatrixXd next_states(online_.input_size(), cols);
  std::vector<int> actions(batch_size);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Transition& t = batch[static_cast<std::size_t>(j)];
    states.col(j) = t.state;
    next_states.col(j) = t.next_state;
    actions[static_cast<std::size_t>(j)] = t.action;
  }

  const Eigen::MatrixXd q_target = target_.forward_batch(next_states);
  Eigen::MatrixXd q_online;
  if (rule_ == TargetRule::kDouble) q_online = online_.forward_batch(next_states);

  Eigen::VectorXd y(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Transition& t = batch[static_cast<std::size_t>(j)];
    if (t.done) {
      y[j] = t.reward;
      continue;
    }
    const double bootstrap = rule_ == TargetRule::kDouble
                                 ? q_target(argmax(q_online.col(j)), j)
                                 : q_target.col(j).maxCoeff();
    y[j] = t.reward + cfg_.gamma * bootstrap;
  }

  const double loss = mlp_train_step(online_, opt_, states, actions, y);
  ++updates_;
  if (updates_ % static_cast<std::uint64_t>(cfg_.n_freq) == 0) target_ = sync_target(online_);
  return loss;
}

}  // namespace risopt
