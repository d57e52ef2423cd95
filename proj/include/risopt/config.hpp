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

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace risopt {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kPi = 3.14159265358979323846;

using Rng = std::mt19937_64;

/// Builds an independent generator for one (seed, stream) pair so that, for
/// example, the channel draw of a seed is shared by every method.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

namespace stream {
inline constexpr std::uint64_t kChannel = 1;
inline constexpr std::uint64_t kAgent = 2;
inline constexpr std::uint64_t kBaseline = 3;
}  // namespace stream

inline double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }

enum class PathLossKind { kFreeSpace, kItuIndoor };

/// LoS basic transmission loss. The free-space form is the default; the indoor
/// form follows the ITU-R P.1238 site-general shape
///   L = 20 log10(f_MHz) + N log10(d) + L_f - 28.
struct PathLossModel {
  PathLossKind kind = PathLossKind::kFreeSpace;
  double distance_coefficient = 30.0;  // N, indoor model only
  double floor_loss_db = 0.0;          // L_f, indoor model only

  double loss_db(double distance_m, double freq_hz) const;
};

/// Linear amplitude gain sqrt(10^(-L/10)) for a LoS hop of the given length.
double path_loss_amplitude(double distance_m, double freq_hz,
                           const PathLossModel& model = {});

enum class PrecoderNorm { kColumn, kMatrix };

struct Room {
  double length = 8.0;
  double width = 8.0;
  double height = 6.0;
};

struct SystemConfig {
  int n_elements = 100;
  int n_antennas = 4;
  int n_users = 2;
  double freq_hz = 5.25e9;
  double bandwidth_hz = 10e6;
  double p_max_watt = dbm_to_watt(25.0);
  double noise_watt = dbm_to_watt(-94.0);
  double rician_h = 5.0;
  double rician_g = 5.0;
  int resolution_bits = 1;
  double amplitude = 1.0;
  Room room;
  double max_node_height = 4.0;
  // Unset spacings follow the carrier: lambda/2 at the FBS, lambda/4 on the RIS.
  std::optional<double> fbs_antenna_spacing;
  std::optional<double> ris_cell_spacing;
  PathLossModel path_loss;
  PrecoderNorm precoder_norm = PrecoderNorm::kColumn;
  // Unset means K * sigma^2.
  std::optional<double> kappa;

  double wavelength() const { return kSpeedOfLight / freq_hz; }
  double fbs_spacing() const { return fbs_antenna_spacing.value_or(wavelength() / 2.0); }
  double ris_spacing() const { return ris_cell_spacing.value_or(wavelength() / 4.0); }
  double regularization() const { return kappa.value_or(n_users * noise_watt); }
  int levels() const { return 1 << resolution_bits; }
  /// Side length of the square RIS; throws if N is not a perfect square.
  int side() const;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

/// Exploration probability max(eps_min, eps_init * (1 - eps_decay)^step).
struct EpsilonSchedule {
  double eps_init = 1.0;
  double eps_min = 0.001;
  double eps_decay = 1e-4;

  double value(std::uint64_t global_step) const;
};

struct AgentConfig {
  double gamma = 0.99;
  double alpha = 1e-3;
  EpsilonSchedule epsilon;
  int n_replay = 8000;
  int n_batch = 512;
  int n_freq = 1000;
  int n_episodes = 5000;
  int n_steps = 7;
  double omega = 2.0;
  // Greedy trials per step; negative means sqrt(N) (one pass over the column).
  int ga_iterations = -1;
  std::vector<int> hidden = {512, 256, 128};
  // Rewards in bit/s instead of bit/s/Hz.
  bool reward_in_bps = false;

  static AgentConfig ddqn_defaults();
  static AgentConfig ddqn_ga_defaults();

  int greedy_iterations(int side) const { return ga_iterations < 0 ? side : ga_iterations; }
  void validate() const;
};

/// Named bundle of scenario and agent settings.
struct Profile {
  std::string name;
  SystemConfig system;
  AgentConfig ddqn;
  AgentConfig ddqn_ga;
};

/// `tiny`, `small` or `paper`; throws on anything else.
Profile profile(const std::string& name);

}  // namespace risopt
