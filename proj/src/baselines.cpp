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

#include "risopt/baselines.hpp"

#include <algorithm>
#include <string>

namespace risopt {

PhaseConfig baseline_static(StaticKind kind, const SystemConfig& cfg, Rng& rng) {
  PhaseConfig out = PhaseConfig::zeros(cfg.n_elements, cfg.resolution_bits);
  if (kind == StaticKind::kRandom) {
    std::uniform_int_distribution<int> level(0, cfg.levels() - 1);
    for (int& j : out.indices) j = level(rng);
  }
  return out;
}

RandomSearchResult random_search(const ChannelPair& ch, const SystemConfig& cfg, int draws, Rng& rng) {
  if (draws < 1) throw std::invalid_argument("random_search: draws must be >= 1");
  RandomSearchResult out;
  out.best_rate_bps = -1.0;
  double total = 0.0;
  for (int i = 0; i < draws; ++i) {
    PhaseConfig candidate = baseline_static(StaticKind::kRandom, cfg, rng);
    const double r = sum_rate(candidate, ch, cfg).rate_bps;
    total += r;
    if (r > out.best_rate_bps) {
      out.best_rate_bps = r;
      out.best = std::move(candidate);
    }
  }
  out.mean_rate_bps = total / draws;
  return out;
}

OracleResult exhaustive_oracle(const ChannelPair& ch, const SystemConfig& cfg) {
  const int bits = cfg.n_elements * cfg.resolution_bits;
  if (bits > kMaxExhaustiveBits)
    throw std::invalid_argument("exhaustive_oracle: N * resolution_bits = " + std::to_string(bits) +
                                " exceeds the enumeration bound of " +
                                std::to_string(kMaxExhaustiveBits));
  PhaseConfig current = PhaseConfig::zeros(cfg.n_elements, cfg.resolution_bits);
  OracleResult out;
  out.best_rate_bps = -1.0;
  const int levels = cfg.levels();
  // Odometer with the last element fastest visits configurations in
  // lexicographic order, so a strict comparison keeps the lowest on ties.
  while (true) {
    const double r = sum_rate(current, ch, cfg).rate_bps;
    ++out.evaluations;
    if (r > out.best_rate_bps) {
      out.best_rate_bps = r;
      out.best = current;
    }
    int pos = cfg.n_elements - 1;
    while (pos >= 0 && current.indices[pos] == levels - 1) current.indices[pos--] = 0;
    if (pos < 0) break;
    ++current.indices[pos];
  }
  return out;
}

void PsoParams::validate() const {
  if (swarm_size < 2) throw std::invalid_argument("pso: swarm_size must be >= 2");
  if (iterations < 0) throw std::invalid_argument("pso: iterations must be >= 0");
  if (!(inertia > 0 && cognitive > 0 && social > 0))
    throw std::invalid_argument("pso: coefficients must be positive");
}

PhaseConfig quantize_phases(std::span<const double> theta, int resolution_bits) {
  if (resolution_bits < 1) throw std::invalid_argument("quantize: resolution_bits must be >= 1");
  const int levels = 1 << resolution_bits;
  const double step = 2.0 * kPi / levels;
  PhaseConfig out = PhaseConfig::zeros(static_cast<int>(theta.size()), resolution_bits);
  for (std::size_t n = 0; n < theta.size(); ++n) {
    const double wrapped = theta[n] - 2.0 * kPi * std::floor(theta[n] / (2.0 * kPi));
    // ceil(q - 1/2) rounds to nearest with exact halves going down.
    const auto j = static_cast<long>(std::ceil(wrapped / step - 0.5));
    out.indices[n] = static_cast<int>(((j % levels) + levels) % levels);
  }
  return out;
}

namespace {

double wrap_angle(double x) { return x - 2.0 * kPi * std::floor(x / (2.0 * kPi)); }

// Shortest signed angular difference in [-pi, pi).
double angle_diff(double to, double from) {
  return wrap_angle(to - from + kPi) - kPi;
}

}  // namespace

PsoResult pso_optimize(const ChannelPair& ch, const SystemConfig& cfg, const PsoParams& pso, Rng& rng) {
  pso.validate();
  const int dims = cfg.n_elements;
  const double v_max = kPi;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> v_init(-0.1 * v_max, 0.1 * v_max);

  auto fitness = [&](const std::vector<double>& x) {
    return sum_rate(continuous_beamforming(x, cfg.amplitude), ch, cfg).rate_bps;
  };

  std::vector<std::vector<double>> pos(pso.swarm_size, std::vector<double>(dims));
  std::vector<std::vector<double>> vel(pso.swarm_size, std::vector<double>(dims));
  for (int i = 0; i < pso.swarm_size; ++i)
    for (int d = 0; d < dims; ++d) {
      pos[i][d] = angle(rng);
      vel[i][d] = v_init(rng);
    }
  std::vector<std::vector<double>> pbest = pos;
  std::vector<double> pbest_fit(pso.swarm_size);
  int g = 0;
  for (int i = 0; i < pso.swarm_size; ++i) {
    pbest_fit[i] = fitness(pos[i]);
    if (pbest_fit[i] > pbest_fit[g]) g = i;
  }
  std::vector<double> gbest = pbest[g];
  double gbest_fit = pbest_fit[g];

  PsoResult out;
  out.best_trace_bps.reserve(static_cast<std::size_t>(pso.iterations));
  for (int it = 0; it < pso.iterations; ++it) {
    for (int i = 0; i < pso.swarm_size; ++i) {
      for (int d = 0; d < dims; ++d) {
        const double r1 = unit(rng);
        const double r2 = unit(rng);
        double v = pso.inertia * vel[i][d] + pso.cognitive * r1 * angle_diff(pbest[i][d], pos[i][d]) +
                   pso.social * r2 * angle_diff(gbest[d], pos[i][d]);
        v = std::clamp(v, -v_max, v_max);
        vel[i][d] = v;
        pos[i][d] = wrap_angle(pos[i][d] + v);
      }
      const double f = fitness(pos[i]);
      if (f > pbest_fit[i]) {
        pbest_fit[i] = f;
        pbest[i] = pos[i];
        if (f > gbest_fit) {
          gbest_fit = f;
          gbest = pos[i];
        }
      }
    }
    out.best_trace_bps.push_back(gbest_fit);
  }

  out.continuous = gbest;
  out.continuous_rate_bps = gbest_fit;
  out.quantized = quantize_phases(gbest, cfg.resolution_bits);
  out.quantized_rate_bps = sum_rate(out.quantized, ch, cfg).rate_bps;
  return out;
}

std::vector<int> decode_column_action(std::uint64_t action, int side, int resolution_bits) {
  const std::uint64_t base = 1ULL << resolution_bits;
  std::vector<int> levels(static_cast<std::size_t>(side));
  for (int c = 0; c < side; ++c) {
    levels[c] = static_cast<int>(action % base);
    action /= base;
  }
  if (action != 0) throw std::invalid_argument("decode_column_action: action out of range");
  return levels;
}

std::uint64_t encode_column_action(std::span<const int> levels, int resolution_bits) {
  const std::uint64_t base = 1ULL << resolution_bits;
  std::uint64_t action = 0;
  for (std::size_t c = levels.size(); c-- > 0;) {
    if (levels[c] < 0 || static_cast<std::uint64_t>(levels[c]) >= base)
      throw std::invalid_argument("encode_column_action: level out of range");
    action = action * base + static_cast<std::uint64_t>(levels[c]);
  }
  return action;
}

PhaseConfig column_levels_to_phases(std::span<const int> levels, int side, int resolution_bits) {
  PhaseConfig out = PhaseConfig::zeros(side * side, resolution_bits);
  for (int c = 0; c < side; ++c)
    for (int r = 0; r < side; ++r) out.indices[element_index(c, r, side)] = levels[c];
  return out;
}

TrainReport columnwise_enum_train(EnumVariant variant, const AgentConfig& cfg,
                                  const SystemConfig& sys, const ChannelPair& ch, int episodes,
                                  Rng& rng) {
  cfg.validate();
  sys.validate();
  const int side = sys.side();
  const int action_bits = side * sys.resolution_bits;
  if (action_bits > kMaxEnumeratedActionBits)
    throw std::invalid_argument("columnwise_enum_train: sqrt(N) * resolution_bits = " +
                                std::to_string(action_bits) + " exceeds the action-space bound of " +
                                std::to_string(kMaxEnumeratedActionBits));
  if (episodes < 1) throw std::invalid_argument("columnwise_enum_train: episodes must be >= 1");
  const int action_count = 1 << action_bits;

  const PhaseConfig start = PhaseConfig::zeros(sys.n_elements, sys.resolution_bits);
  const Eigen::VectorXd state = build_state(ch, start, nullptr, StateNorm::from_channel(ch));
  QLearner learner(static_cast<int>(state.size()), action_count, cfg,
                   variant == EnumVariant::kDdqn ? TargetRule::kDouble : TargetRule::kMax, rng);
  const double unit = cfg.reward_in_bps ? sys.bandwidth_hz : 1.0;

  TrainReport report;
  report.action_count = action_count;
  report.best_rate_bps = -1.0;
  report.steps.reserve(static_cast<std::size_t>(episodes));
  report.episodes.reserve(static_cast<std::size_t>(episodes));
  for (int episode = 1; episode <= episodes; ++episode) {
    const double eps = cfg.epsilon.value(static_cast<std::uint64_t>(episode));
    const int action = learner.select_action(state, eps, rng);
    const auto levels = decode_column_action(static_cast<std::uint64_t>(action), side, sys.resolution_bits);
    PhaseConfig config = column_levels_to_phases(levels, side, sys.resolution_bits);
    const double rate = sum_rate(config, ch, sys).rate_bps;
    ++report.evaluations;
    const double reward = rate / sys.bandwidth_hz * unit;

    learner.remember(Transition{state, action, reward, state, true});
    const auto loss = learner.learn(rng);

    StepRecord rec;
    rec.episode = episode;
    rec.step = 1;
    rec.epsilon = eps;
    rec.action = action;
    rec.reward = reward;
    rec.sum_rate_bps = rate;
    if (loss) rec.loss = *loss;
    rec.pre_refine_reward = reward;
    report.steps.push_back(rec);
    report.episodes.push_back({reward, rate});
    if (rate > report.best_rate_bps) {
      report.best_rate_bps = rate;
      report.best_phases = std::move(config);
    }
  }
  return report;
}

}  // namespace risopt
