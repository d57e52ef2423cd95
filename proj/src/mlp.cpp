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

#include "risopt/mlp.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace risopt {
namespace {

constexpr const char* kCheckpointMagic = "risopt-mlp";
constexpr int kCheckpointVersion = 1;

void check_sizes(const std::vector<int>& sizes) {
  if (sizes.size() < 2) throw std::invalid_argument("mlp: need at least input and output widths");
  for (int s : sizes)
    if (s < 1) throw std::invalid_argument("mlp: layer widths must be >= 1");
}

Mlp::Gradients zero_like(const Mlp& net) {
  Mlp::Gradients g;
  for (const auto& w : net.weights()) g.weights.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  for (const auto& b : net.biases()) g.biases.push_back(Eigen::VectorXd::Zero(b.size()));
  return g;
}

}  // namespace

Mlp::Mlp(std::vector<int> layer_sizes, Rng& rng) : sizes_(std::move(layer_sizes)) {
  check_sizes(sizes_);
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int fan_in = sizes_[l];
    const double bound = std::sqrt(6.0 / fan_in);
    std::uniform_real_distribution<double> dist(-bound, bound);
    Eigen::MatrixXd w(sizes_[l + 1], fan_in);
    for (Eigen::Index c = 0; c < w.cols(); ++c)
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = dist(rng);
    weights_.push_back(std::move(w));
    biases_.push_back(Eigen::VectorXd::Zero(sizes_[l + 1]));
  }
}

Mlp Mlp::zeros(std::vector<int> layer_sizes) {
  check_sizes(layer_sizes);
  Mlp net;
  net.sizes_ = std::move(layer_sizes);
  for (std::size_t l = 0; l + 1 < net.sizes_.size(); ++l) {
    net.weights_.push_back(Eigen::MatrixXd::Zero(net.sizes_[l + 1], net.sizes_[l]));
    net.biases_.push_back(Eigen::VectorXd::Zero(net.sizes_[l + 1]));
  }
  return net;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (int l = 0; l < layer_count(); ++l)
    n += static_cast<std::size_t>(weights_[l].size() + biases_[l].size());
  return n;
}

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& input) const {
  if (input.size() != input_size())
    throw std::invalid_argument("mlp: input width " + std::to_string(input.size()) +
                                " does not match " + std::to_string(input_size()));
  Eigen::VectorXd a = input;
  for (int l = 0; l < layer_count(); ++l) {
    Eigen::VectorXd z = weights_[l] * a + biases_[l];
    a = (l + 1 < layer_count()) ? Eigen::VectorXd(z.cwiseMax(0.0)) : z;
  }
  return a;
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& inputs) const {
  if (inputs.rows() != input_size())
    throw std::invalid_argument("mlp: batch input width does not match the network");
  Eigen::MatrixXd a = inputs;
  for (int l = 0; l < layer_count(); ++l) {
    Eigen::MatrixXd z = weights_[l] * a;
    z.colwise() += biases_[l];
    if (l + 1 < layer_count()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

void Mlp::check_batch(const Eigen::MatrixXd& inputs, std::span<const int> actions,
                      const Eigen::VectorXd& targets) const {
  if (inputs.cols() == 0) throw std::invalid_argument("mlp: empty batch");
  if (inputs.rows() != input_size()) throw std::invalid_argument("mlp: input size mismatch");
  if (static_cast<Eigen::Index>(actions.size()) != inputs.cols() || targets.size() != inputs.cols())
    throw std::invalid_argument("mlp: batch arrays disagree in length");
  for (int a : actions)
    if (a < 0 || a >= output_size()) throw std::invalid_argument("mlp: action out of range");
}

double Mlp::loss_and_gradients(const Eigen::MatrixXd& inputs, std::span<const int> actions,
                               const Eigen::VectorXd& targets, Gradients& grads) const {
  check_batch(inputs, actions, targets);
  const auto batch = static_cast<double>(inputs.cols());

  // activations[l] is the input of layer l; pre[l] its pre-activation output.
  std::vector<Eigen::MatrixXd> activations;
  std::vector<Eigen::MatrixXd> pre;
  activations.reserve(layer_count() + 1);
  activations.push_back(inputs);
  for (int l = 0; l < layer_count(); ++l) {
    Eigen::MatrixXd z = weights_[l] * activations.back();
    z.colwise() += biases_[l];
    pre.push_back(z);
    activations.push_back(l + 1 < layer_count() ? Eigen::MatrixXd(z.cwiseMax(0.0)) : z);
  }

  const Eigen::MatrixXd& q = activations.back();
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(q.rows(), q.cols());
  double loss = 0.0;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double err = q(actions[j], j) - targets[j];
    loss += err * err;
    delta(actions[j], j) = err / batch;
  }
  loss /= 2.0 * batch;

  grads.weights.resize(layer_count());
  grads.biases.resize(layer_count());
  for (int l = layer_count() - 1; l >= 0; --l) {
    grads.weights[l].noalias() = delta * activations[l].transpose();
    grads.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = weights_[l].transpose() * delta;
      delta = back.cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return loss;
}

double Mlp::loss(const Eigen::MatrixXd& inputs, std::span<const int> actions,
                 const Eigen::VectorXd& targets) const {
  check_batch(inputs, actions, targets);
  const Eigen::MatrixXd q = forward_batch(inputs);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double err = q(actions[j], j) - targets[j];
    loss += err * err;
  }
  return loss / (2.0 * static_cast<double>(q.cols()));
}

void Mlp::save(std::ostream& out) const {
  out << kCheckpointMagic << ' ' << kCheckpointVersion << '\n';
  out << "layers " << sizes_.size();
  for (int s : sizes_) out << ' ' << s;
  out << '\n';
  out.precision(std::numeric_limits<double>::max_digits10);
  for (int l = 0; l < layer_count(); ++l) {
    const auto& w = weights_[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) out << (c ? " " : "") << w(r, c);
      out << '\n';
    }
    for (Eigen::Index r = 0; r < biases_[l].size(); ++r) out << (r ? " " : "") << biases_[l][r];
    out << '\n';
  }
}

Mlp Mlp::load(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kCheckpointMagic)
    throw std::runtime_error("mlp checkpoint: bad header");
  if (version != kCheckpointVersion)
    throw std::runtime_error("mlp checkpoint: unsupported version " + std::to_string(version));
  std::string tag;
  std::size_t count = 0;
  if (!(in >> tag >> count) || tag != "layers" || count < 2)
    throw std::runtime_error("mlp checkpoint: bad layer line");
  std::vector<int> sizes(count);
  for (auto& s : sizes)
    if (!(in >> s)) throw std::runtime_error("mlp checkpoint: truncated layer sizes");
  Mlp net = zeros(sizes);
  for (int l = 0; l < net.layer_count(); ++l) {
    auto& w = net.weights_[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c)
        if (!(in >> w(r, c))) throw std::runtime_error("mlp checkpoint: truncated weights");
    for (Eigen::Index r = 0; r < net.biases_[l].size(); ++r)
      if (!(in >> net.biases_[l][r])) throw std::runtime_error("mlp checkpoint: truncated biases");
  }
  return net;
}

bool Mlp::operator==(const Mlp& other) const {
  if (sizes_ != other.sizes_) return false;
  for (int l = 0; l < layer_count(); ++l)
    if (weights_[l] != other.weights_[l] || biases_[l] != other.biases_[l]) return false;
  return true;
}

AdamOptimizer::AdamOptimizer(const Mlp& net, double learning_rate, double beta1, double beta2,
                             double epsilon)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(epsilon),
      m_(zero_like(net)),
      v_(zero_like(net)) {}

void AdamOptimizer::step(Mlp& net, const Mlp::Gradients& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    param.array() -= lr_ * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
  };
  for (int l = 0; l < net.layer_count(); ++l) {
    update(net.weights()[l], m_.weights[l], v_.weights[l], grads.weights[l]);
    update(net.biases()[l], m_.biases[l], v_.biases[l], grads.biases[l]);
  }
}

double mlp_train_step(Mlp& net, AdamOptimizer& opt, const Eigen::MatrixXd& inputs,
                      std::span<const int> actions, const Eigen::VectorXd& targets) {
  Mlp::Gradients grads;
  const double loss = net.loss_and_gradients(inputs, actions, targets, grads);
  opt.step(net, grads);
  return loss;
}

double mlp_train_step(Mlp& net, AdamOptimizer& opt, std::span<const TrainSample> batch) {
  if (batch.empty()) throw std::invalid_argument("mlp: empty batch");
  Eigen::MatrixXd inputs(net.input_size(), static_cast<Eigen::Index>(batch.size()));
  std::vector<int> actions(batch.size());
  Eigen::VectorXd targets(static_cast<Eigen::Index>(batch.size()));
  for (std::size_t j = 0; j < batch.size(); ++j) {
    if (batch[j].input.size() != net.input_size())
      throw std::invalid_argument("mlp: sample input width does not match the network");
    inputs.col(static_cast<Eigen::Index>(j)) = batch[j].input;
    actions[j] = batch[j].action;
    targets[static_cast<Eigen::Index>(j)] = batch[j].target;
  }
  return mlp_train_step(net, opt, inputs, actions, targets);
}

}  // namespace risopt
