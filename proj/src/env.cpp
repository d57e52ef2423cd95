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

#include "risopt/env.hpp"

#include <string>

namespace risopt {

StateNorm StateNorm::from_channel(const ChannelPair& ch) {
  const double energy = ch.g.squaredNorm() + ch.h.squaredNorm();
  const auto count = static_cast<double>(ch.g.size() + ch.h.size());
  const double rms = std::sqrt(energy / count);
  return StateNorm{rms > 0.0 ? rms : 1.0};
}

namespace {

Eigen::Index row_width(const ChannelPair& ch, bool refined) {
  return 2 * ch.g.cols() + 2 * ch.h.cols() + (refined ? 2 : 1);
}

void fill_channel(const ChannelPair& ch, const StateNorm& norm, Eigen::Index width,
                  Eigen::VectorXd& out) {
  const Eigen::Index m = ch.g.cols();
  const Eigen::Index k = ch.h.cols();
  for (Eigen::Index n = 0; n < ch.g.rows(); ++n) {
    double* row = out.data() + n * width;
    for (Eigen::Index i = 0; i < m; ++i) row[i] = ch.g(n, i).real() / norm.channel_rms;
    for (Eigen::Index i = 0; i < k; ++i) row[m + i] = ch.h(n, i).real() / norm.channel_rms;
    for (Eigen::Index i = 0; i < m; ++i) row[m + k + i] = ch.g(n, i).imag() / norm.channel_rms;
    for (Eigen::Index i = 0; i < k; ++i) row[2 * m + k + i] = ch.h(n, i).imag() / norm.channel_rms;
  }
}

void fill_phases(const PhaseConfig& phases, const PhaseConfig* refined, Eigen::Index width,
                 Eigen::Index offset, Eigen::VectorXd& out) {
  // degrees / 360 == index / levels
  for (int n = 0; n < phases.size(); ++n) {
    out[n * width + offset] = static_cast<double>(phases.indices[n]) / phases.levels();
    if (refined)
      out[n * width + offset + 1] = static_cast<double>(refined->indices[n]) / refined->levels();
  }
}

}  // namespace

Eigen::VectorXd build_state(const ChannelPair& ch, const PhaseConfig& phases,
                            const PhaseConfig* refined, const StateNorm& norm) {
  const Eigen::Index n = ch.g.rows();
  if (ch.h.rows() != n || phases.size() != n || (refined && refined->size() != n))
    throw std::invalid_argument("build_state: inconsistent element counts");
  const Eigen::Index width = row_width(ch, refined != nullptr);
  Eigen::VectorXd out(n * width);
  fill_channel(ch, norm, width, out);
  fill_phases(phases, refined, width, 2 * ch.g.cols() + 2 * ch.h.cols(), out);
  return out;
}

GreedyOutcome greedy_refine(PhaseConfig& config, int column, int side, double baseline_reward,
                            int iterations,
                            const std::function<double(const PhaseConfig&)>& objective) {
  if (column < 0 || column >= side) throw std::invalid_argument("greedy_refine: column out of range");
  GreedyOutcome out;
  out.reward = baseline_reward;
  out.trials.reserve(static_cast<std::size_t>(std::max(iterations, 0)));
  for (int p = 0; p < iterations; ++p) {
    const int element = element_index(column, p % side, side);
    const int saved = config.indices[element];
    config.advance(element);
    const double r = objective(config);
    const bool keep = r >= out.reward;
    if (keep)
      out.reward = r;
    else
      config.indices[element] = saved;
    out.trials.emplace_back(element, keep);
  }
  return out;
}

RisEnv::RisEnv(const ChannelPair& ch, const SystemConfig& sys, Options opts)
    : ch_(ch), sys_(sys), opts_(opts), side_(sys.side()), norm_(StateNorm::from_channel(ch)) {
  sys_.validate();
  if (ch.g.rows() != sys.n_elements || ch.g.cols() != sys.n_antennas ||
      ch.h.rows() != sys.n_elements || ch.h.cols() != sys.n_users)
    throw std::invalid_argument("env: channel shapes do not match the system config");
  if (opts_.n_steps < 1) throw std::invalid_argument("env: n_steps must be >= 1");
  phases_ = PhaseConfig::zeros(sys.n_elements, sys.resolution_bits);
  working_ = phases_;
  best_ = phases_;
  channel_block_ = Eigen::VectorXd::Zero(sys.n_elements * row_width(ch, opts_.with_refined));
  fill_channel(ch, norm_, row_width(ch, opts_.with_refined), channel_block_);
}

int RisEnv::state_size() const { return static_cast<int>(channel_block_.size()); }

double RisEnv::spectral_efficiency(const PhaseConfig& config) const {
  return sum_rate(config, ch_, sys_).spectral_bps_hz;
}

double RisEnv::evaluate(const PhaseConfig& config) {
  const double se = spectral_efficiency(config);
  ++evaluations_;
  if (se > best_se_) {
    best_se_ = se;
    best_ = config;
  }
  return se;
}

Eigen::VectorXd RisEnv::current_state() const {
  Eigen::VectorXd s = channel_block_;
  const Eigen::Index width = row_width(ch_, opts_.with_refined);
  fill_phases(phases_, opts_.with_refined ? &working_ : nullptr, width,
              2 * ch_.g.cols() + 2 * ch_.h.cols(), s);
  return s;
}

Eigen::VectorXd RisEnv::reset() {
  phases_ = PhaseConfig::zeros(sys_.n_elements, sys_.resolution_bits);
  working_ = phases_;
  t_ = 0;
  // The all-zero start is part of every trajectory; score it once.
  if (best_se_ < 0.0) evaluate(phases_);
  return current_state();
}

StepResult RisEnv::step(int action) {
  if (action < 0 || action > side_)
    throw std::invalid_argument("env: action " + std::to_string(action) + " outside [0, " +
                                std::to_string(side_) + "]");
  if (t_ >= opts_.n_steps) throw std::logic_error("env: episode already finished; call reset()");

  if (action > 0) {
    const int column = action - 1;
    for (int row = 0; row < side_; ++row) {
      phases_.advance(element_index(column, row, side_));
      working_.advance(element_index(column, row, side_));
    }
  }
  // Plain runs keep working_ identical to phases_.
  const double unit = reward_unit();
  const double before = evaluate(working_) * unit;

  StepResult out;
  double reward = before;
  if (opts_.with_refined && action > 0 && opts_.greedy_iterations > 0) {
    auto objective = [this, unit](const PhaseConfig& c) { return evaluate(c) * unit; };
    out.greedy = greedy_refine(working_, action - 1, side_, before, opts_.greedy_iterations, objective);
    reward = out.greedy->reward;
  }

  ++t_;
  out.done = t_ == opts_.n_steps;
  const double weight = out.done ? opts_.omega : 1.0;
  out.reward = weight * reward;
  out.pre_refine_reward = weight * before;
  out.rate_bps = reward / unit * sys_.bandwidth_hz;
  out.state = current_state();
  return out;
}

}  // namespace risopt
