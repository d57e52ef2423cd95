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

#include <Eigen/Core>
#include <iosfwd>
#include <span>
#include <vector>

#include "risopt/config.hpp"

namespace risopt {

/// Fully connected network: ReLU on hidden layers, linear output layer.
/// Layer l maps sizes[l] -> sizes[l + 1] with weight matrix (out x in).
class Mlp {
 public:
  struct Gradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
  };

  Mlp() = default;
  /// He-uniform weights, zero biases.
  Mlp(std::vector<int> layer_sizes, Rng& rng);
  static Mlp zeros(std::vector<int> layer_sizes);

  const std::vector<int>& layer_sizes() const { return sizes_; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  int layer_count() const { return static_cast<int>(weights_.size()); }
  std::size_t parameter_count() const;

  std::vector<Eigen::MatrixXd>& weights() { return weights_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  std::vector<Eigen::VectorXd>& biases() { return biases_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

  Eigen::VectorXd forward(const Eigen::VectorXd& input) const;
  /// One sample per column.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& inputs) const;

  /// Loss 1/(2B) sum_j (target_j - Q(s_j, a_j))^2 over the taken actions only,
  /// with its gradient written into `grads`.
  double loss_and_gradients(const Eigen::MatrixXd& inputs, std::span<const int> actions,
                            const Eigen::VectorXd& targets, Gradients& grads) const;

  double loss(const Eigen::MatrixXd& inputs, std::span<const int> actions,
              const Eigen::VectorXd& targets) const;

  /// Text checkpoint: versioned header, layer sizes, then row-major weights
  /// and biases at full round-trip precision.
  void save(std::ostream& out) const;
  static Mlp load(std::istream& in);

  bool operator==(const Mlp& other) const;

 private:
  void check_batch(const Eigen::MatrixXd& inputs, std::span<const int> actions,
                   const Eigen::VectorXd& targets) const;

  std::vector<int> sizes_;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

/// Adaptive moment estimation.
class AdamOptimizer {
 public:
  AdamOptimizer() = default;
  AdamOptimizer(const Mlp& net, double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
                double epsilon = 1e-8);

  void step(Mlp& net, const Mlp::Gradients& grads);
  std::uint64_t steps() const { return t_; }
  double learning_rate() const { return lr_; }

 private:
  double lr_ = 1e-3;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  std::uint64_t t_ = 0;
  Mlp::Gradients m_;
  Mlp::Gradients v_;
};

struct TrainSample {
  Eigen::VectorXd input;
  int action = 0;
  double target = 0.0;
};

/// One optimizer step on the batch; returns the loss measured before the step.
double mlp_train_step(Mlp& net, AdamOptimizer& opt, const Eigen::MatrixXd& inputs,
                      std::span<const int> actions, const Eigen::VectorXd& targets);
double mlp_train_step(Mlp& net, AdamOptimizer& opt, std::span<const TrainSample> batch);

}  // namespace risopt
