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

#include "risopt/config.hpp"

#include <algorithm>
#include <stdexcept>

namespace risopt {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

double PathLossModel::loss_db(double distance_m, double freq_hz) const {
  if (!(distance_m > 0.0)) throw std::invalid_argument("path loss: distance must be positive");
  if (!(freq_hz > 0.0)) throw std::invalid_argument("path loss: frequency must be positive");
  switch (kind) {
    case PathLossKind::kFreeSpace:
      return 20.0 * std::log10(distance_m) + 20.0 * std::log10(freq_hz) - 147.55;
    case PathLossKind::kItuIndoor:
      return 20.0 * std::log10(freq_hz / 1e6) + distance_coefficient * std::log10(distance_m) +
             floor_loss_db - 28.0;
  }
  throw std::logic_error("path loss: unknown model");
}

double path_loss_amplitude(double distance_m, double freq_hz, const PathLossModel& model) {
  return std::pow(10.0, -model.loss_db(distance_m, freq_hz) / 20.0);
}

int SystemConfig::side() const {
  if (n_elements < 1) throw std::invalid_argument("n_elements must be >= 1");
  auto s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_elements))));
  if (s * s != n_elements)
    throw std::invalid_argument("n_elements must be a perfect square, got " +
                                std::to_string(n_elements));
  return s;
}

void SystemConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  side();
  if (n_antennas < 1) fail("n_antennas must be >= 1");
  if (n_users < 1) fail("n_users must be >= 1");
  if (!(freq_hz > 0)) fail("freq_hz must be positive");
  if (!(bandwidth_hz > 0)) fail("bandwidth_hz must be positive");
  if (!(p_max_watt > 0)) fail("p_max_watt must be positive");
  if (!(noise_watt > 0)) fail("noise_watt must be positive");
  if (!(rician_h >= 0)) fail("rician_h must be >= 0");
  if (!(rician_g >= 0)) fail("rician_g must be >= 0");
  if (resolution_bits < 1 || resolution_bits > 16) fail("resolution_bits must be in [1, 16]");
  if (!(amplitude > 0 && amplitude <= 1)) fail("amplitude must be in (0, 1]");
  if (!(room.length > 0 && room.width > 0 && room.height > 0)) fail("room dimensions must be positive");
  if (!(max_node_height >= 0 && max_node_height <= room.height))
    fail("max_node_height must lie within the room height");
  if (!(fbs_spacing() > 0)) fail("fbs_antenna_spacing must be positive");
  if (!(ris_spacing() > 0)) fail("ris_cell_spacing must be positive");
  if ((side() - 1) * ris_spacing() > std::min(room.length, room.width))
    fail("ris does not fit on the ceiling");
  if ((n_antennas - 1) * fbs_spacing() > room.width) fail("fbs array does not fit in the room");
  if (kappa && !(*kappa >= 0)) fail("kappa must be >= 0");
}

double EpsilonSchedule::value(std::uint64_t global_step) const {
  return std::max(eps_min, eps_init * std::pow(1.0 - eps_decay, static_cast<double>(global_step)));
}

AgentConfig AgentConfig::ddqn_defaults() { return AgentConfig{}; }

AgentConfig AgentConfig::ddqn_ga_defaults() {
  AgentConfig cfg;
  cfg.alpha = 5e-4;
  cfg.n_freq = 2000;
  cfg.hidden = {512, 512, 256, 128};
  return cfg;
}

void AgentConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(gamma >= 0 && gamma <= 1)) fail("gamma must be in [0, 1]");
  if (!(alpha > 0)) fail("alpha must be positive");
  if (!(epsilon.eps_min >= 0 && epsilon.eps_min <= epsilon.eps_init && epsilon.eps_init <= 1))
    fail("epsilon bounds must satisfy 0 <= eps_min <= eps_init <= 1");
  if (!(epsilon.eps_decay >= 0 && epsilon.eps_decay < 1)) fail("eps_decay must be in [0, 1)");
  if (n_replay < 1) fail("n_replay must be >= 1");
  if (n_batch < 1 || n_batch > n_replay) fail("n_batch must be in [1, n_replay]");
  if (n_freq < 1) fail("n_freq must be >= 1");
  if (n_episodes < 1) fail("n_episodes must be >= 1");
  if (n_steps < 1) fail("n_steps must be >= 1");
  if (hidden.empty()) fail("hidden must list at least one layer");
  for (int w : hidden)
    if (w < 1) fail("hidden widths must be >= 1");
}

namespace {

// Desk profiles shrink the run, so exploration decay, batch size and target
// sync period are rescaled to keep the same shape of schedule.
Profile make_desk(std::string name, int n, int m, int k, std::vector<int> hidden,
                  std::vector<int> hidden_ga, int episodes, int steps, int batch, int freq,
                  double decay, double alpha) {
  Profile p;
  p.name = std::move(name);
  p.system.n_elements = n;
  p.system.n_antennas = m;
  p.system.n_users = k;
  p.ddqn = AgentConfig::ddqn_defaults();
  p.ddqn.hidden = std::move(hidden);
  p.ddqn.n_episodes = episodes;
  p.ddqn.n_steps = steps;
  p.ddqn.n_batch = batch;
  p.ddqn.n_freq = freq;
  p.ddqn.epsilon.eps_decay = decay;
  p.ddqn.alpha = alpha;
  p.ddqn_ga = AgentConfig::ddqn_ga_defaults();
  p.ddqn_ga.hidden = std::move(hidden_ga);
  p.ddqn_ga.n_episodes = episodes;
  p.ddqn_ga.n_steps = steps;
  p.ddqn_ga.n_batch = batch;
  p.ddqn_ga.n_freq = 2 * freq;
  p.ddqn_ga.epsilon.eps_decay = decay;
  // Half the plain agent's step, as at full scale.
  p.ddqn_ga.alpha = alpha / 2.0;
  return p;
}

}  // namespace

Profile profile(const std::string& name) {
  if (name == "tiny") return make_desk("tiny", 4, 2, 2, {32, 16}, {32, 32, 16}, 500, 3, 64, 50, 3e-3, 1e-3);
  if (name == "small")
    return make_desk("small", 25, 4, 2, {128, 64}, {128, 128, 64}, 1500, 5, 64, 200, 1e-3, 1e-4);
  if (name == "paper") {
    Profile p;
    p.name = "paper";
    p.ddqn = AgentConfig::ddqn_defaults();
    p.ddqn_ga = AgentConfig::ddqn_ga_defaults();
    return p;
  }
  throw std::invalid_argument("unknown profile '" + name + "' (expected tiny, small or paper)");
}

}  // namespace risopt
