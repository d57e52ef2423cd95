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

#include <gtest/gtest.h>

#include <cmath>

#include "risopt/qlearner.hpp"

namespace risopt {
namespace {

Transition make_transition(double tag, int width = 3) {
  Transition t;
  t.state = Eigen::VectorXd::Constant(width, tag);
  t.next_state = Eigen::VectorXd::Constant(width, tag + 0.5);
  t.reward = tag;
  return t;
}

TEST(MlpForward, ZeroParametersGiveZeroOutput) {
  const Mlp net = Mlp::zeros({4, 8, 3});
  EXPECT_EQ(net.forward(Eigen::VectorXd::Random(4)), Eigen::VectorXd::Zero(3));
}

TEST(MlpForward, IdentityLayerPassesInputThrough) {
  Mlp net = Mlp::zeros({3, 3});
  net.weights()[0].setIdentity();
  Eigen::VectorXd x(3);
  x << -1.5, 0.0, 2.25;
  EXPECT_EQ(net.forward(x), x);
  EXPECT_THROW(net.forward(Eigen::VectorXd::Zero(4)), std::invalid_argument);
}

TEST(MlpForward, MatchesStraightLineReference) {
  Rng rng = make_rng(7, 0);
  Mlp net({5, 6, 4, 2}, rng);
  for (auto& b : net.biases()) b.setRandom();
  Eigen::VectorXd x = Eigen::VectorXd::Random(5);
  // Reference with explicit loops.
  std::vector<double> a(x.data(), x.data() + x.size());
  for (int l = 0; l < net.layer_count(); ++l) {
    const auto& w = net.weights()[l];
    std::vector<double> z(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      double s = net.biases()[l](i);
      for (Eigen::Index j = 0; j < w.cols(); ++j) s += w(i, j) * a[static_cast<std::size_t>(j)];
      z[static_cast<std::size_t>(i)] = (l + 1 < net.layer_count()) ? std::max(0.0, s) : s;
    }
    a = z;
  }
  const Eigen::VectorXd q = net.forward(x);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(q[i], a[static_cast<std::size_t>(i)], 1e-12 * std::max(1.0, std::abs(a[i])));
}

TEST(MlpTrainStep, ZeroLossLeavesParametersUnchanged) {
  Rng rng = make_rng(8, 0);
  Mlp net({4, 8, 3}, rng);
  AdamOptimizer opt(net, 1e-3);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 6);
  const std::vector<int> a = {0, 1, 2, 0, 1, 2};
  const Eigen::MatrixXd q = net.forward_batch(x);
  Eigen::VectorXd y(6);
  for (int j = 0; j < 6; ++j) y[j] = q(a[j], j);
  const Mlp before = net;
  EXPECT_EQ(mlp_train_step(net, opt, x, a, y), 0.0);
  for (int l = 0; l < net.layer_count(); ++l) {
    EXPECT_LE((net.weights()[l] - before.weights()[l]).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((net.biases()[l] - before.biases()[l]).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(MlpTrainStep, LossDecreasesOnFixedBatch) {
  Rng rng = make_rng(9, 0);
  Mlp net({10, 32, 16, 4}, rng);
  AdamOptimizer opt(net, 1e-3);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(10, 32);
  std::vector<int> a(32);
  Eigen::VectorXd y(32);
  std::uniform_int_distribution<int> pick(0, 3);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int j = 0; j < 32; ++j) {
    a[j] = pick(rng);
    y[j] = normal(rng);
  }
  double prev = mlp_train_step(net, opt, x, a, y);
  for (int i = 0; i < 50; ++i) {
    const double now = mlp_train_step(net, opt, x, a, y);
    EXPECT_LT(now, prev) << "step " << i;
    prev = now;
  }
}

TEST(MlpTrainStep, SampleOverloadMatchesMatrixOverload) {
  Rng rng = make_rng(10, 0);
  Mlp a({3, 5, 2}, rng);
  Mlp b = a;
  AdamOptimizer oa(a, 1e-2), ob(b, 1e-2);
  std::vector<TrainSample> batch = {{Eigen::Vector3d(1, 2, 3), 1, 0.5}, {Eigen::Vector3d(-1, 0, 2), 0, -1.0}};
  Eigen::MatrixXd x(3, 2);
  x.col(0) = batch[0].input;
  x.col(1) = batch[1].input;
  const std::vector<int> acts = {1, 0};
  Eigen::Vector2d y(0.5, -1.0);
  EXPECT_EQ(mlp_train_step(a, oa, batch), mlp_train_step(b, ob, x, acts, y));
  EXPECT_TRUE(a == b);
}

TEST(ReplayBuffer, RingEvictsOldestFirst) {
  ReplayBuffer buf(4);
  buf.push(make_transition(0));
  EXPECT_EQ(buf.size(), 1u);
  for (int i = 1; i <= 4; ++i) buf.push(make_transition(i));
  EXPECT_EQ(buf.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(buf.at(i).reward, static_cast<double>(i + 1));
  buf.push(make_transition(5));
  EXPECT_EQ(buf.at(0).reward, 2.0);
  EXPECT_EQ(buf.at(3).reward, 5.0);
  EXPECT_THROW(buf.at(4), std::out_of_range);
}

TEST(ReplayBuffer, SingleItemSample) {
  ReplayBuffer buf(10);
  buf.push(make_transition(3.5));
  Rng rng = make_rng(1, 0);
  const auto s = buf.sample(1, rng);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].get().reward, 3.5);
  EXPECT_THROW(buf.sample(2, rng), std::invalid_argument);
  EXPECT_THROW(ReplayBuffer(0), std::invalid_argument);
}

TEST(ReplayBuffer, FullBatchAndDeterminism) {
  ReplayBuffer buf(8000);
  for (int i = 0; i < 512; ++i) buf.push(make_transition(i, 1));
  Rng a = make_rng(2, 0), b = make_rng(2, 0);
  const auto sa = buf.sample(512, a);
  const auto sb = buf.sample(512, b);
  ASSERT_EQ(sa.size(), 512u);
  for (std::size_t i = 0; i < 512; ++i) EXPECT_EQ(&sa[i].get(), &sb[i].get());
}

TEST(ReplayBuffer, UniformSampling) {
  ReplayBuffer buf(10);
  for (int i = 0; i < 10; ++i) buf.push(make_transition(i, 1));
  Rng rng = make_rng(3, 0);
  std::vector<int> counts(10, 0);
  const int draws = 100000;
  for (int i = 0; i < draws / 10; ++i)
    for (const auto& t : buf.sample(10, rng)) ++counts[static_cast<std::size_t>(t.get().reward)];
  const double mean = draws / 10.0;
  const double sigma = std::sqrt(draws * 0.1 * 0.9);
  for (int c : counts) EXPECT_LE(std::abs(c - mean), 3.0 * sigma);
}

TEST(Epsilon, ScheduleValues) {
  EpsilonSchedule s;
  EXPECT_EQ(s.value(0), 1.0);
  EXPECT_EQ(s.value(10'000'000), 0.001);
  // (1 - 1e-4)^6931 = exp(6931 * log1p(-1e-4))
  const double expected = std::exp(6931.0 * std::log1p(-1e-4));
  EXPECT_NEAR(s.value(6931), expected, 1e-12);
  EXPECT_NEAR(s.value(6931), 0.5, 0.0005);
  double prev = 1.0;
  for (std::uint64_t t = 0; t < 200000; t += 97) {
    const double v = s.value(t);
    EXPECT_LE(v, prev);
    EXPECT_GE(v, s.eps_min);
    EXPECT_LE(v, s.eps_init);
    prev = v;
  }
}

TEST(TargetSync, CopyIsIndependent) {
  Rng rng = make_rng(4, 0);
  Mlp online({3, 4, 2}, rng);
  Mlp target = sync_target(online);
  const Eigen::VectorXd x = Eigen::VectorXd::Random(3);
  EXPECT_EQ(target.forward(x), online.forward(x));
  EXPECT_TRUE(sync_target(target) == target);
  AdamOptimizer opt(online, 1e-2);
  Eigen::MatrixXd xb = x;
  mlp_train_step(online, opt, xb, std::vector<int>{0}, Eigen::VectorXd::Constant(1, 10.0));
  EXPECT_NE(target.forward(x), online.forward(x));
}

AgentConfig small_agent() {
  AgentConfig cfg;
  cfg.n_replay = 64;
  cfg.n_batch = 4;
  cfg.n_freq = 3;
  cfg.hidden = {8};
  return cfg;
}

TEST(QLearner, OutputWidthAndWarmup) {
  Rng rng = make_rng(5, 0);
  QLearner q(3, 6, small_agent(), TargetRule::kDouble, rng);
  EXPECT_EQ(q.action_count(), 6);
  for (int i = 0; i < 3; ++i) {
    q.remember(make_transition(i));
    EXPECT_FALSE(q.learn(rng).has_value());
  }
  q.remember(make_transition(3));
  EXPECT_TRUE(q.learn(rng).has_value());
  EXPECT_EQ(q.updates(), 1u);
}

TEST(QLearner, TargetSyncsEveryNfUpdates) {
  Rng rng = make_rng(6, 0);
  QLearner q(3, 2, small_agent(), TargetRule::kDouble, rng);
  for (int i = 0; i < 8; ++i) q.remember(make_transition(i));
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(3);
  q.learn(rng);
  q.learn(rng);
  EXPECT_NE(q.target().forward(x), q.online().forward(x));
  q.learn(rng);
  EXPECT_EQ(q.target().forward(x), q.online().forward(x));
}

TEST(QLearner, TerminalTargetIsReward) {
  // With only terminal transitions the learner regresses Q(s, a) onto r.
  AgentConfig cfg = small_agent();
  cfg.alpha = 1e-2;
  cfg.hidden = {16};
  Rng rng = make_rng(7, 0);
  QLearner q(2, 2, cfg, TargetRule::kDouble, rng);
  for (int i = 0; i < 32; ++i) {
    Transition t;
    t.state = Eigen::Vector2d(1.0, i % 2);
    t.next_state = t.state;
    t.action = i % 2;
    t.reward = t.action == 0 ? 3.0 : -1.0;
    t.done = true;
    q.remember(t);
  }
  for (int i = 0; i < 2000; ++i) q.learn(rng);
  EXPECT_NEAR(q.online().forward(Eigen::Vector2d(1.0, 0.0))[0], 3.0, 0.05);
  EXPECT_NEAR(q.online().forward(Eigen::Vector2d(1.0, 1.0))[1], -1.0, 0.05);
}

TEST(QLearner, SelectActionExtremes) {
  Rng rng = make_rng(8, 0);
  QLearner q(3, 5, small_agent(), TargetRule::kMax, rng);
  const Eigen::VectorXd s = Eigen::VectorXd::Random(3);
  const int greedy = q.greedy_action(s);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(q.select_action(s, 0.0, rng), greedy);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 5000; ++i) ++seen[static_cast<std::size_t>(q.select_action(s, 1.0, rng))];
  for (int c : seen) EXPECT_GT(c, 800);
}

TEST(QLearner, ArgmaxPrefersLowestIndexOnTies) {
  Eigen::VectorXd v(4);
  v << 1.0, 3.0, 3.0, 2.0;
  EXPECT_EQ(argmax(v), 1);
}

TEST(AgentConfig, DefaultsAndValidation) {
  const AgentConfig d = AgentConfig::ddqn_defaults();
  EXPECT_EQ(d.gamma, 0.99);
  EXPECT_EQ(d.alpha, 1e-3);
  EXPECT_EQ(d.n_freq, 1000);
  EXPECT_EQ(d.n_replay, 8000);
  EXPECT_EQ(d.n_batch, 512);
  EXPECT_EQ(d.n_episodes, 5000);
  EXPECT_EQ(d.n_steps, 7);
  EXPECT_EQ(d.omega, 2.0);
  EXPECT_EQ(d.epsilon.eps_decay, 1e-4);
  EXPECT_EQ(d.hidden, (std::vector<int>{512, 256, 128}));
  const AgentConfig g = AgentConfig::ddqn_ga_defaults();
  EXPECT_EQ(g.alpha, 5e-4);
  EXPECT_EQ(g.n_freq, 2000);
  EXPECT_EQ(g.hidden, (std::vector<int>{512, 512, 256, 128}));
  EXPECT_EQ(g.greedy_iterations(10), 10);
  AgentConfig bad = d;
  bad.n_batch = 9000;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = d;
  bad.gamma = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = d;
  bad.hidden = {};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace risopt
