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

#include "risopt/agents.hpp"

#include <algorithm>

namespace risopt {

double TrainReport::final_rate_mean(int window) const {
  if (episodes.empty()) return 0.0;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(window, 1)), episodes.size());
  double sum = 0.0;
  for (std::size_t i = episodes.size() - n; i < episodes.size(); ++i) sum += episodes[i].final_rate_bps;
  return sum / static_cast<double>(n);
}

namespace {

TrainReport train_accumulated(const AgentConfig& cfg, const SystemConfig& sys,
                              const ChannelPair& ch, Rng& rng, bool refine) {
  cfg.validate();
  RisEnv::Options opts;
  opts.n_steps = cfg.n_steps;
  opts.omega = cfg.omega;
  opts.with_refined = refine;
  opts.greedy_iterations = refine ? cfg.greedy_iterations(sys.side()) : 0;
  opts.reward_in_bps = cfg.reward_in_bps;
  RisEnv env(ch, sys, opts);

  QLearner learner(env.state_size(), env.action_count(), cfg, TargetRule::kDouble, rng);

  TrainReport report;
  report.action_count = env.action_count();
  report.steps.reserve(static_cast<std::size_t>(cfg.n_episodes) * cfg.n_steps);
  report.episodes.reserve(static_cast<std::size_t>(cfg.n_episodes));

  std::uint64_t global_step = 0;
  for (int episode = 1; episode <= cfg.n_episodes; ++episode) {
    Eigen::VectorXd state = env.reset();
    for (int t = 1; t <= cfg.n_steps; ++t) {
      // The schedule exponent is iT + t with 0-based episode i.
      ++global_step;
      const double eps = cfg.epsilon.value(global_step);
      const int action = learner.select_action(state, eps, rng);
      StepResult res = env.step(action);

      learner.remember(Transition{state, action, res.reward, res.state, res.done});
      const auto loss = learner.learn(rng);

      StepRecord rec;
      rec.episode = episode;
      rec.step = t;
      rec.epsilon = eps;
      rec.action = action;
      rec.reward = res.reward;
      rec.sum_rate_bps = res.rate_bps;
      if (loss) rec.loss = *loss;
      rec.pre_refine_reward = res.pre_refine_reward;
      report.steps.push_back(rec);

      if (res.done) report.episodes.push_back({res.reward, res.rate_bps});
      state = std::move(res.state);
    }
  }
  report.best_phases = env.best_phases();
  report.best_rate_bps = env.best_rate_bps();
  report.evaluations = env.evaluations();
  return report;
}

}  // namespace

TrainReport ddqn_train(const AgentConfig& cfg, const SystemConfig& sys, const ChannelPair& ch,
                       Rng& rng) {
  return train_accumulated(cfg, sys, ch, rng, false);
}

TrainReport ddqn_ga_train(const AgentConfig& cfg, const SystemConfig& sys, const ChannelPair& ch,
                          Rng& rng) {
  return train_accumulated(cfg, sys, ch, rng, true);
}

}  // namespace risopt
